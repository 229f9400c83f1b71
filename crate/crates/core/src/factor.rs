//! Integer factorization: trial division with a Pollard-rho fallback.

/// Complete prime factorization of a positive integer, primes strictly
/// increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub n: u64,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Largest exponent appearing in the factorization (0 for n = 1).
    pub fn max_exponent(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).max().unwrap_or(0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.max_exponent() <= 1
    }

    /// Reassembles the integer; used by tests as a round-trip check.
    pub fn product(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| p.pow(e))
            .product::<u64>()
    }
}

const TRIAL_BOUND: u64 = 1_000_000;

/// Factor `n >= 1`. Deterministic; `n = 1` yields an empty factor list.
pub fn factor(n: u64) -> Factorization {
    assert!(n >= 1, "factor requires n >= 1");
    let mut factors = Vec::new();
    let mut rest = n;
    let mut push = |p: u64, rest: &mut u64| {
        let mut e = 0;
        while *rest % p == 0 {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(2, &mut rest);
    let mut p = 3;
    while p <= TRIAL_BOUND && p * p <= rest {
        push(p, &mut rest);
        p += 2;
    }
    if rest > 1 {
        // At most two prime factors remain, both above the trial bound.
        if is_prime(rest) {
            factors.push((rest, 1));
        } else {
            let d = pollard_rho(rest);
            let (p, q) = (d.min(rest / d), d.max(rest / d));
            if p == q {
                factors.push((p, 2));
            } else {
                factors.push((p, 1));
                factors.push((q, 1));
            }
        }
    }
    factors.sort_unstable_by_key(|&(p, _)| p);
    Factorization { n, factors }
}

pub fn is_squarefree(n: u64) -> bool {
    n >= 1 && factor(n).is_squarefree()
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // This witness set is exact for all n < 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Returns a nontrivial factor of composite `n`.
fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}
