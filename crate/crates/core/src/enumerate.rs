//! Enumeration of carefree triples and pure quartic fields under a size
//! bound, with residue/type/sign/rectangle filters, and the
//! empirical-vs-predicted count reports for the equidistribution
//! statements.
//!
//! All bounds reduce to an integer comparison on w = |a|^3 b^2 c^3, so
//! boundary cases are decided exactly whenever the bound itself is an
//! integer.

use crate::densities::{psi_star_interval, psi_tau, DensityError, Rect, ZETA2};
use crate::field::{classify_residue, discriminant, Convention, FieldType, NormalForm, Sign};
use crate::sieve::SquarefreeSieve;
use num::integer::gcd;

/// Inclusive integer bound on w = |a|^3 b^2 c^3 encoding either a strict
/// or closed real inequality.
#[derive(Debug, Clone, Copy)]
struct WBound {
    limit: u128,
}

impl WBound {
    /// w <= bound (closed) for real `bound`.
    fn closed(bound: f64) -> WBound {
        WBound {
            limit: bound.max(0.0).floor() as u128,
        }
    }

    /// w < bound (strict) for real `bound`.
    fn strict(bound: f64) -> WBound {
        let limit = if bound.fract() == 0.0 && bound >= 1.0 {
            bound as u128 - 1
        } else {
            bound.max(0.0).floor() as u128
        };
        WBound { limit }
    }
}

/// Exact floor cube root.
fn icbrt(x: u128) -> u64 {
    let mut r = (x as f64).cbrt() as u64;
    while (r as u128 + 1).pow(3) <= x {
        r += 1;
    }
    while r > 0 && (r as u128).pow(3) > x {
        r -= 1;
    }
    r
}

/// One field row of the enumeration output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldRecord {
    pub m: i128,
    pub a: i64,
    pub b: u64,
    pub c: u64,
    pub sign: Sign,
    pub typ: FieldType,
    pub disc: i128,
    /// lambda1^2 = c/|a| in lowest terms.
    pub lambda1_sq: (u64, u64),
    pub b_param: u64,
}

/// Filters applied during enumeration. Empty filters admit everything.
#[derive(Debug, Clone, Default)]
pub struct Filters {
    pub types: Option<Vec<FieldType>>,
    pub sign: Option<Sign>,
    pub rect: Option<Rect>,
    pub tau: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct EnumerationResult {
    /// Records sorted by (|disc|, m).
    pub records: Vec<FieldRecord>,
    /// Triples whose product is divisible by 8 (even c), which fall
    /// outside the residue classification and are tallied separately.
    pub excluded_8divm: u64,
}

/// Empirical count of a region paired with its closed-form prediction.
#[derive(Debug, Clone, PartialEq)]
pub struct CountReport {
    pub empirical: u64,
    pub predicted: f64,
    pub normalization: f64,
    /// empirical / normalization, to be compared against `predicted`.
    pub ratio: f64,
    pub excluded_8divm: u64,
}

impl CountReport {
    fn new(empirical: u64, predicted: f64, normalization: f64, excluded: u64) -> CountReport {
        CountReport {
            empirical,
            predicted,
            normalization,
            ratio: empirical as f64 / normalization,
            excluded_8divm: excluded,
        }
    }
}

/// Visit every carefree triple (a, b, c) with a >= c >= 1, b >= 1,
/// |a|^3 b^2 c^3 within `bound`, b <= bmax, and a/c <= rmax. The visitor
/// receives (a, b, c). Work is split across `threads` stripes of c;
/// per-thread results are merged by the caller.
fn visit_carefree<T, F, M>(
    bound: WBound,
    rmax: f64,
    bmax: f64,
    threads: usize,
    visit: F,
    merge: M,
) -> T
where
    T: Default + Send,
    F: Fn(&mut T, u64, u64, u64) + Sync,
    M: Fn(&mut T, T),
{
    let limit = bound.limit;
    let amax_global = icbrt(limit);
    if amax_global == 0 {
        return T::default();
    }
    // b alone can reach sqrt(limit) (when a = c = 1).
    let mut bcap = (limit as f64).sqrt() as u64 + 1;
    while (bcap as u128) * (bcap as u128) > limit {
        bcap -= 1;
    }
    let bmax = if bmax.is_finite() {
        bcap.min(bmax.floor() as u64)
    } else {
        bcap
    };
    let sieve = SquarefreeSieve::new(amax_global.max(bmax).max(1));
    let threads = threads.max(1);

    let run_stripe = |tid: usize| -> T {
        let mut acc = T::default();
        for b in 1..=bmax {
            if !sieve.is_squarefree(b) {
                continue;
            }
            let lb = limit / ((b as u128) * (b as u128));
            let pmax = icbrt(lb); // a*c <= pmax
            let mut c = 1u64;
            while (c as u128) * (c as u128) <= pmax as u128 {
                if c as usize % threads == tid
                    && sieve.is_squarefree(c)
                    && gcd(b, c) == 1
                {
                    let mut ahi = pmax / c;
                    let aratio = (rmax * c as f64).floor() as u64;
                    ahi = ahi.min(aratio);
                    for a in c..=ahi {
                        if sieve.is_squarefree(a) && gcd(a, b) == 1 && gcd(a, c) == 1 {
                            visit(&mut acc, a, b, c);
                        }
                    }
                }
                c += 1;
            }
        }
        acc
    };

    if threads == 1 {
        run_stripe(0)
    } else {
        let mut parts: Vec<Option<T>> = std::thread::scope(|s| {
            let stripe = &run_stripe;
            let handles: Vec<_> = (0..threads)
                .map(|tid| s.spawn(move || stripe(tid)))
                .collect();
            handles
                .into_iter()
                .map(|h| Some(h.join().expect("enumeration worker panicked")))
                .collect()
        });
        let mut total = T::default();
        for p in parts.iter_mut() {
            merge(&mut total, p.take().unwrap());
        }
        total
    }
}

/// Residue of sign * a b^2 c^3 modulo 32 in [0, 32).
fn tau_of(a: u64, b: u64, c: u64, sign: Sign) -> u64 {
    let w = (a % 32) * (b % 32 * (b % 32)) % 32 * (c % 32 * (c % 32) % 32 * (c % 32)) % 32;
    (sign.as_i64() * w as i64).rem_euclid(32) as u64
}

/// Enumerate the fields K_m with |a| b^(2/3) c <= N in counting normal
/// form, subject to the filters. Triples with 8 | a b^2 c^3 (even c) are
/// tallied as excluded; a = +1 triples are reducible and skipped.
pub fn enumerate_fields(n: f64, filters: &Filters, threads: usize) -> EnumerationResult {
    let bound = WBound::closed(n * n * n);
    let (rmax, bmax, rect) = match filters.rect {
        Some(r) => (r.r1hi, r.r2hi, Some(r)),
        None => (f64::INFINITY, f64::INFINITY, None),
    };
    let signs: Vec<Sign> = match filters.sign {
        Some(s) => vec![s],
        None => vec![Sign::Plus, Sign::Minus],
    };
    type Acc = (Vec<FieldRecord>, u64);
    let (mut records, excluded) = visit_carefree(
        bound,
        rmax,
        bmax,
        threads,
        |acc: &mut Acc, a, b, c| {
            if let Some(r) = &rect {
                if (a as f64) < r.r1lo * c as f64 || (b as f64) < r.r2lo {
                    return;
                }
            }
            for &sign in &signs {
                // a = 1 forces c = 1 (a >= c), so m = sign * b^2. The
                // positive case is a reducible square; negatively, b = 1
                // gives degenerate m = -1 and b = 2 the excluded m = -4.
                if a == 1 && (sign == Sign::Plus || b <= 2) {
                    continue;
                }
                if c % 2 == 0 {
                    acc.1 += 1;
                    continue;
                }
                let tau = tau_of(a, b, c, sign);
                if let Some(want) = filters.tau {
                    if tau != want % 32 {
                        continue;
                    }
                }
                let typ = classify_residue(tau).expect("odd c has 8-free product");
                if let Some(types) = &filters.types {
                    if !types.contains(&typ) {
                        continue;
                    }
                }
                let signed_a = sign.as_i64() * a as i64;
                // With c odd and |a| >= c this triple is its own
                // normalization under both conventions.
                let nf = NormalForm {
                    a: signed_a,
                    b,
                    c,
                    convention: Convention::Funakura,
                };
                let m = signed_a as i128 * (b * b) as i128 * (c * c * c) as i128;
                let g = gcd(a, c);
                acc.0.push(FieldRecord {
                    m,
                    a: signed_a,
                    b,
                    c,
                    sign,
                    typ,
                    disc: discriminant(&nf, typ),
                    lambda1_sq: (c / g, a / g),
                    b_param: b,
                });
            }
        },
        |total: &mut Acc, part: Acc| {
            total.0.extend(part.0);
            total.1 += part.1;
        },
    );
    records.sort_by_key(|r| (r.disc.abs(), r.m));
    EnumerationResult {
        records,
        excluded_8divm: excluded,
    }
}

/// Count carefree triples in R(N, R1, R2) with a b^2 c^3 = tau (mod 32),
/// against the predicted density N/(2048 zeta(2)) log R1 psi_tau(R2).
/// Several residues share one enumeration pass.
pub fn count_c_tau_multi(
    n: f64,
    r1: f64,
    r2: f64,
    taus: &[u64],
    threads: usize,
) -> Result<Vec<CountReport>, DensityError> {
    for &t in taus {
        if t % 8 == 0 {
            return Err(DensityError::InvalidTau(t % 32));
        }
    }
    let bound = WBound::strict(n * n * n);
    type Acc = [u64; 32];
    let counts: Acc = visit_carefree(
        bound,
        r1,
        r2,
        threads,
        |acc: &mut Acc, a, b, c| {
            acc[tau_of(a, b, c, Sign::Plus) as usize] += 1;
        },
        |total: &mut Acc, part: Acc| {
            for i in 0..32 {
                total[i] += part[i];
            }
        },
    );
    taus.iter()
        .map(|&t| {
            let predicted = 1.0 / (2048.0 * ZETA2) * r1.ln() * psi_tau(t, r2)?;
            Ok(CountReport::new(counts[(t % 32) as usize], predicted, n, 0))
        })
        .collect()
}

pub fn count_c_tau(
    n: f64,
    r1: f64,
    r2: f64,
    tau: u64,
    threads: usize,
) -> Result<CountReport, DensityError> {
    Ok(count_c_tau_multi(n, r1, r2, &[tau], threads)?.remove(0))
}

/// Count fields of one type and sign with |disc| <= X and shape
/// parameters (|a|/c, b) in `rect`, normalized by N = (X / 2^k)^(1/3)
/// and compared against the limiting density
/// (1/(2 zeta(2))) (log R1hi - log R1lo) (psi_* mass of [R2lo, R2hi]).
pub fn theorem_ratio_report(
    typ: FieldType,
    sign: Sign,
    x: f64,
    rect: &Rect,
    threads: usize,
) -> CountReport {
    let n = (x / (1u64 << typ.two_power()) as f64).cbrt();
    let filters = Filters {
        types: Some(vec![typ]),
        sign: Some(sign),
        rect: Some(*rect),
        tau: None,
    };
    let result = enumerate_fields(n, &filters, threads);
    let predicted = 1.0 / (2.0 * ZETA2)
        * (rect.r1hi.ln() - rect.r1lo.ln())
        * psi_star_interval(typ, rect.r2lo, rect.r2hi);
    CountReport::new(
        result.records.len() as u64,
        predicted,
        n,
        result.excluded_8divm,
    )
}

/// Fraction of carefree-region triples that fail l-carefreeness, with
/// the reference envelope K (l^{-4/3} + N^{-1/2}).
pub fn non_carefree_fraction(n: f64, r1: f64, r2: f64, l: u64, k_env: f64) -> (f64, f64) {
    let bound = WBound::strict(n * n * n);
    // Count all triples and the l-carefree ones directly; here the
    // triples range over the whole region without the carefree sieve.
    let limit = bound.limit;
    let mut total = 0u64;
    let mut failing = 0u64;
    let sq = l * l;
    for b in 1..=(r2.floor() as u64) {
        if (b as u128) * (b as u128) > limit {
            break;
        }
        let lb = limit / ((b as u128) * (b as u128));
        let pmax = icbrt(lb);
        let mut c = 1u64;
        while (c as u128) * (c as u128) <= pmax as u128 {
            let ahi = (pmax / c).min((r1 * c as f64).floor() as u64);
            for a in c..=ahi {
                total += 1;
                if (a * b) % sq == 0 || (b * c) % sq == 0 || (c * a) % sq == 0 {
                    failing += 1;
                }
            }
            c += 1;
        }
    }
    let fraction = if total == 0 {
        0.0
    } else {
        failing as f64 / total as f64
    };
    let envelope = k_env * ((l as f64).powf(-4.0 / 3.0) + n.powf(-0.5));
    (fraction, envelope)
}
