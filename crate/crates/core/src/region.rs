//! The plane region S(M, R) and the solid region R(N, R1, R2): areas,
//! exact lattice-point counts, the Lipschitz bound tying them together,
//! and the main-term prediction for the solid count.

/// Area of S(M, R) = {(a, c) : a >= c >= 1, ac < M, a/c <= R}.
pub fn area_s(m: f64, r: f64) -> f64 {
    if m >= r {
        (m / 2.0) * r.ln() - (r - 1.0) / 2.0
    } else {
        (m / 2.0) * m.ln() - (m - 1.0) / 2.0
    }
}

/// Upper bound for the length of the boundary of S(M, R).
pub fn boundary_length_bound(m: f64, r: f64) -> f64 {
    (2f64.sqrt() + (1.0 + r * r).sqrt()) * (m.sqrt() - 1.0) + (r - 1.0)
}

/// Exact number of integer pairs in S(M, R): a >= c >= 1, ac < M
/// (strict), a/c <= R (closed).
pub fn count_s_exact(m: f64, r: f64) -> u64 {
    let mut count = 0u64;
    let mut c = 1u64;
    while ((c * c) as f64) < m {
        // a < M/c strictly.
        let mut a_prod = (m / c as f64).floor() as u64;
        while a_prod >= 1 && (a_prod * c) as f64 >= m {
            a_prod -= 1;
        }
        // a <= R c.
        let a_ratio = (r * c as f64).floor() as u64;
        let hi = a_prod.min(a_ratio);
        if hi >= c {
            count += hi - c + 1;
        }
        c += 1;
    }
    count
}

/// Lipschitz principle: the count differs from the area by at most
/// 4(L + 1) where L bounds the boundary length.
pub fn lipschitz_check(m: f64, r: f64) -> bool {
    let diff = (count_s_exact(m, r) as f64 - area_s(m, r)).abs();
    diff <= 4.0 * (boundary_length_bound(m, r) + 1.0)
}

/// Exact count of R(N, R1, R2) via the disjoint b-slice decomposition
/// into S(N/b^{2/3}, R1).
pub fn count_r_exact(n: f64, r1: f64, r2: f64) -> u64 {
    (1..=(r2.floor() as u64))
        .map(|b| count_s_exact(n / (b as f64).powf(2.0 / 3.0), r1))
        .sum()
}

/// Independent triple-loop count of R(N, R1, R2), used as an oracle for
/// the slice decomposition.
pub fn count_r_direct(n: f64, r1: f64, r2: f64) -> u64 {
    let mut count = 0u64;
    for b in 1..=(r2.floor() as u64) {
        let m = n / (b as f64).powf(2.0 / 3.0);
        let mut c = 1u64;
        while ((c * c) as f64) < m {
            for a in c.. {
                if ((a * c) as f64) >= m || a as f64 > r1 * c as f64 {
                    break;
                }
                count += 1;
            }
            c += 1;
        }
    }
    count
}

/// Main term of the lattice-point asymptotic for R(N, R1, R2).
pub fn predicted_count_r(n: f64, r1: f64, r2: f64) -> f64 {
    let sum: f64 = (1..=(r2.floor() as u64))
        .map(|b| (b as f64).powf(-2.0 / 3.0))
        .sum();
    (n / 2.0) * r1.ln() * sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn area_examples() {
        assert_eq!(area_s(1.0, 5.0), 0.0);
        assert!((area_s(4.0, 2.0) - (2.0 * 2f64.ln() - 0.5)).abs() < 1e-12);
        // Both branches agree at M = R.
        let r = 3.0;
        assert!((area_s(r, r) - ((r / 2.0) * r.ln() - (r - 1.0) / 2.0)).abs() < 1e-12);
        assert!((area_s(3.0, 3.0) - 0.6479184330021646).abs() < 1e-12);
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(boundary_length_bound(1.0, 1.0), 0.0);
        let expect = 2f64.sqrt() + 5f64.sqrt() + 1.0;
        assert!((boundary_length_bound(4.0, 2.0) - expect).abs() < 1e-12);
        assert!((boundary_length_bound(9.0, 1.0) - 4.0 * 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn count_s_examples() {
        assert_eq!(count_s_exact(1.0, 10.0), 0);
        assert_eq!(count_s_exact(4.0, 2.0), 2); // (1,1), (2,1)
        assert_eq!(count_s_exact(10.0, 3.0), 7);
    }

    #[test]
    fn lipschitz_small_grid() {
        assert!(lipschitz_check(4.0, 2.0));
        assert!(lipschitz_check(1.0, 1.0));
        for m in [10.0, 100.0, 1000.0] {
            for r in [1.0, 2.0, 5.0, 10.0] {
                assert!(lipschitz_check(m, r), "M = {m}, R = {r}");
            }
        }
    }

    #[test]
    fn count_r_examples() {
        assert_eq!(count_r_exact(1.0, 2.0, 2.0), 0);
        assert_eq!(count_r_exact(4.0, 2.0, 1.0), 2);
        let slices =
            count_s_exact(4.0, 2.0) + count_s_exact(4.0 / 2f64.powf(2.0 / 3.0), 2.0);
        assert_eq!(count_r_exact(4.0, 2.0, 2.0), slices);
    }

    #[test]
    fn slices_agree_with_direct_oracle() {
        for n in [1.0, 4.0, 10.0, 100.0, 1000.0, 5000.0] {
            for r1 in [1.0, 2.0, 4.0, 10.0] {
                for r2 in [1.0, 2.0, 3.0, 5.0] {
                    assert_eq!(
                        count_r_exact(n, r1, r2),
                        count_r_direct(n, r1, r2),
                        "N = {n}, R1 = {r1}, R2 = {r2}"
                    );
                }
            }
        }
    }

    #[test]
    fn predicted_examples() {
        assert_eq!(predicted_count_r(100.0, 1.0, 5.0), 0.0);
        assert!((predicted_count_r(100.0, std::f64::consts::E, 1.0) - 50.0).abs() < 1e-12);
        let expect = 5e5 * 4f64.ln() * (1.0 + 2f64.powf(-2.0 / 3.0) + 3f64.powf(-2.0 / 3.0));
        assert!((predicted_count_r(1e6, 4.0, 3.0) - expect).abs() < 1e-6);
    }
}
