//! Carefree triples: the local non-divisibility conditions, their exact
//! density at an odd prime, and the brute-force residue count backing
//! the closed form.

use crate::factor;
use num::rational::Ratio;

/// (a, b, c) is l-carefree when l^2 divides none of ab, bc, ca.
pub fn is_l_carefree(a: u64, b: u64, c: u64, l: u64) -> bool {
    let sq = l * l;
    (a * b) % sq != 0 && (b * c) % sq != 0 && (c * a) % sq != 0
}

/// Carefree at every prime; equivalent to a, b, c squarefree and
/// pairwise coprime.
pub fn is_carefree(a: u64, b: u64, c: u64) -> bool {
    let mut l = 2u64;
    let bound = a.max(b).max(c);
    while l * l <= a * b || l * l <= b * c || l * l <= c * a {
        if l > bound {
            break;
        }
        if factor::is_prime(l) && !is_l_carefree(a, b, c, l) {
            return false;
        }
        l += 1;
    }
    true
}

/// Density of l-carefree triples in (Z/l^2)^3: (1 - 1/l)^3 (1 + 3/l).
pub fn carefree_density(l: u64) -> Ratio<u64> {
    let one = Ratio::from_integer(1u64);
    let inv = Ratio::new(1u64, l);
    (one - inv) * (one - inv) * (one - inv) * (one + inv * 3)
}

/// Exhaustive count of l-carefree residue triples in (Z/l^2)^3; must
/// equal (l - 1)^3 (l^3 + 3 l^2).
pub fn brute_force_a(l: u64) -> u64 {
    let sq = l * l;
    let mut count = 0;
    for a in 0..sq {
        for b in 0..sq {
            if (a * b) % sq == 0 {
                continue;
            }
            for c in 0..sq {
                if (b * c) % sq != 0 && (c * a) % sq != 0 {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Closed form (l - 1)^3 (l^3 + 3 l^2) for the count above.
pub fn a_l_formula(l: u64) -> u64 {
    (l - 1).pow(3) * (l.pow(3) + 3 * l * l)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn carefree_examples() {
        assert!(is_carefree(2, 3, 5));
        assert!(!is_carefree(2, 6, 1)); // 4 | 2*6
        assert!(!is_carefree(4, 1, 1)); // 4 | 4*1
        assert!(is_carefree(1, 1, 1));
    }

    #[test]
    fn carefree_matches_pairwise_coprime_squarefree() {
        let gcd = |mut a: u64, mut b: u64| {
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a
        };
        for a in 1..=30u64 {
            for b in 1..=30 {
                for c in 1..=30 {
                    let alt = factor::is_squarefree(a)
                        && factor::is_squarefree(b)
                        && factor::is_squarefree(c)
                        && gcd(a, b) == 1
                        && gcd(b, c) == 1
                        && gcd(c, a) == 1;
                    assert_eq!(is_carefree(a, b, c), alt, "({a},{b},{c})");
                }
            }
        }
    }

    #[test]
    fn density_examples() {
        assert_eq!(carefree_density(3), Ratio::new(16, 27));
        // (4/5)^3 (8/5) = 512/625.
        assert_eq!(carefree_density(5), Ratio::new(512, 625));
    }

    #[test]
    fn brute_force_matches_formula() {
        for l in [3u64, 5, 7] {
            assert_eq!(brute_force_a(l), a_l_formula(l), "l = {l}");
        }
        assert_eq!(brute_force_a(3), 432);
    }

    #[test]
    fn density_consistent_with_count() {
        for l in [3u64, 5, 7] {
            let total = (l * l).pow(3);
            assert_eq!(
                carefree_density(l),
                Ratio::new(a_l_formula(l), total),
                "l = {l}"
            );
        }
    }
}
