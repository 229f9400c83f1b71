//! End-to-end acceptance gate. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails, after all lines have printed.

use num::bigint::BigInt;
use qshape_core::carefree::{a_l_formula, brute_force_a};
use qshape_core::densities::{m_star, n_tau, psi_tau, ZETA2};
use qshape_core::embed::gram_numeric;
use qshape_core::enumerate::count_c_tau_multi;
use qshape_core::field::{index_square_check, FieldType, PureQuarticField};
use qshape_core::gram::{gram, torus_factorization_check};
use qshape_core::reduce::{
    conjugate, in_f3, minkowski_reduce, shapes_equivalent, Mat3, BOUNDARY_TOL,
};
use qshape_core::region::{
    area_s, boundary_length_bound, count_r_exact, count_s_exact, predicted_count_r,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn admissible_fields(bound: i64) -> impl Iterator<Item = PureQuarticField> {
    (-bound..=bound).filter_map(|m| PureQuarticField::new(m).ok())
}

/// 1. det of the exact 4x4 Gram equals |disc| for every |m| <= 5000.
fn criterion_gram_determinant() -> Result<(), String> {
    for f in admissible_fields(5000) {
        let det = gram(&f).det();
        let expect = BigInt::from(f.abs_discriminant());
        if det != expect {
            return Err(format!("m = {}: det {det} != |disc| {expect}", f.m));
        }
    }
    Ok(())
}

/// 2. Exact Gram matches the embedding-based numeric Gram to 1e-9
///    relative for |m| <= 2000.
fn criterion_embedding_oracle() -> Result<(), String> {
    for f in admissible_fields(2000) {
        let exact = gram(&f).to_f64();
        let numeric = gram_numeric(&f);
        for i in 0..4 {
            for j in 0..4 {
                let scale = exact[i][j].abs().max(1.0);
                if (exact[i][j] - numeric[i][j]).abs() > 1e-9 * scale {
                    return Err(format!(
                        "m = {}, entry ({i},{j}): exact {} vs numeric {}",
                        f.m, exact[i][j], numeric[i][j]
                    ));
                }
            }
        }
    }
    Ok(())
}

/// 3. -256 m^3 / disc is a perfect square for every |m| <= 5000.
fn criterion_index_square() -> Result<(), String> {
    for f in admissible_fields(5000) {
        if !index_square_check(&f) {
            return Err(format!("m = {} fails the index square test", f.m));
        }
    }
    Ok(())
}

/// 4. Exact torus factorization of the projected Gram for |m| <= 5000.
fn criterion_torus_factorization() -> Result<(), String> {
    for f in admissible_fields(5000) {
        if let Err(e) = torus_factorization_check(&f) {
            return Err(format!("m = {}: {e:?}", f.m));
        }
    }
    Ok(())
}

/// 5. Carefree residue counts match (l-1)^3 (l^3 + 3 l^2).
fn criterion_carefree_count() -> Result<(), String> {
    for l in [3u64, 5, 7, 11, 13] {
        let brute = brute_force_a(l);
        let formula = a_l_formula(l);
        if brute != formula {
            return Err(format!("l = {l}: brute {brute} != formula {formula}"));
        }
    }
    Ok(())
}

/// 6. Lipschitz principle on the (M, R) grid.
fn criterion_lipschitz() -> Result<(), String> {
    for m in [1e2, 1e3, 1e4, 1e5] {
        for r in [1.0, 2.0, 5.0, 10.0] {
            let count = count_s_exact(m, r) as f64;
            let area = area_s(m, r);
            let bound = 4.0 * (boundary_length_bound(m, r) + 1.0);
            if (count - area).abs() > bound {
                return Err(format!(
                    "M = {m}, R = {r}: |{count} - {area}| > {bound}"
                ));
            }
        }
    }
    Ok(())
}

/// 7. |count - main term| / sqrt(N) stays under one constant across N.
fn criterion_count_asymptotics() -> Result<(), String> {
    // The constant is the Lipschitz envelope summed over the three
    // b-slices at these (R1, R2); see the boundary-length lemma.
    let c = 60.0;
    for n in [1e3, 1e4, 1e5, 1e6] {
        let count = count_r_exact(n, 4.0, 3.0) as f64;
        let predicted = predicted_count_r(n, 4.0, 3.0);
        let scaled = (count - predicted).abs() / n.sqrt();
        if scaled > c {
            return Err(format!("N = {n}: |{count} - {predicted}|/sqrt(N) = {scaled} > {c}"));
        }
    }
    Ok(())
}

/// 8. Empirical C^tau / N converges to the predicted density: within 15%
///    at N = 10^7 and closer there than at N = 10^5, for tau = 3 and 2.
fn criterion_main_proposition_convergence() -> Result<(), String> {
    let taus = [3u64, 2];
    let threads = std::thread::available_parallelism().map_or(1, |p| p.get());
    let small = count_c_tau_multi(1e5, 4.0, 3.0, &taus, threads).unwrap();
    let large = count_c_tau_multi(1e7, 4.0, 3.0, &taus, threads).unwrap();
    for (i, &tau) in taus.iter().enumerate() {
        let predicted = 1.0 / (2048.0 * ZETA2) * 4f64.ln() * psi_tau(tau, 3.0).unwrap();
        let dev_small = (small[i].ratio - predicted).abs();
        let dev_large = (large[i].ratio - predicted).abs();
        if dev_large > 0.15 * predicted {
            return Err(format!(
                "tau = {tau}: ratio {} vs predicted {predicted} off by more than 15%",
                large[i].ratio
            ));
        }
        if dev_large >= dev_small {
            return Err(format!(
                "tau = {tau}: deviation did not shrink ({dev_small} -> {dev_large})"
            ));
        }
    }
    Ok(())
}

/// 9. Sum of n_tau over a type's residues mod 32 equals 32^2 M_*(b),
///    exactly, for squarefree b <= 50.
fn criterion_residue_reconciliation() -> Result<(), String> {
    for typ in [
        FieldType::I,
        FieldType::II,
        FieldType::III,
        FieldType::IV,
        FieldType::V,
    ] {
        for b in (1..=50u64).filter(|&b| qshape_core::factor::is_squarefree(b)) {
            let lhs: u64 = typ
                .residues_mod_32()
                .iter()
                .map(|&t| n_tau(b, t).unwrap())
                .sum();
            let rhs = m_star(typ, b) * num::rational::Ratio::from_integer(1024u64);
            if !rhs.is_integer() || lhs != rhs.to_integer() {
                return Err(format!(
                    "type {typ}, b = {b}: sum n_tau = {lhs}, 1024 M_* = {rhs}"
                ));
            }
        }
    }
    Ok(())
}

fn random_pd(rng: &mut ChaCha8Rng) -> Mat3 {
    // A^T A + eps I for a random A is positive definite.
    let a: Mat3 = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-2.0..2.0)));
    let mut g = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            g[i][j] = (0..3).map(|k| a[k][i] * a[k][j]).sum::<f64>()
                + if i == j { 0.5 } else { 0.0 };
        }
    }
    g
}

fn random_unimodular(rng: &mut ChaCha8Rng) -> [[i64; 3]; 3] {
    // Product of random elementary shears and permutation signs.
    let mut u = [[1i64, 0, 0], [0, 1, 0], [0, 0, 1]];
    for _ in 0..6 {
        let i = rng.gen_range(0..3usize);
        let mut j = rng.gen_range(0..3usize);
        while j == i {
            j = rng.gen_range(0..3usize);
        }
        let k: i64 = rng.gen_range(-2..=2);
        for col in 0..3 {
            u[i][col] += k * u[j][col];
        }
    }
    u
}

/// 10. Reduction lands in F3; constructed-equivalent pairs are accepted
///     and constructed-inequivalent pairs rejected, at tolerance 1e-8.
fn criterion_reduction_sanity() -> Result<(), String> {
    let tol = 1e-8;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ca1ab1e);
    for trial in 0..500 {
        let g = random_pd(&mut rng);
        let (reduced, _) = minkowski_reduce(&g)
            .map_err(|e| format!("trial {trial}: reduction failed: {e}"))?;
        if !in_f3(&reduced, BOUNDARY_TOL) {
            return Err(format!("trial {trial}: reduced matrix not in F3"));
        }
        // Equivalent pair: s * u^T g u.
        let u = random_unimodular(&mut rng);
        let s = rng.gen_range(0.1..10.0);
        let mut h = conjugate(&g, &u);
        for row in h.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        if !shapes_equivalent(&g, &h, tol) {
            return Err(format!("trial {trial}: equivalent pair rejected"));
        }
    }
    // Inequivalent pairs: distinct diagonal shapes diag(1, t, t^2).
    for trial in 0..100 {
        let t1 = 1.5 + 0.05 * trial as f64;
        let t2 = t1 + 0.5;
        let g1 = [[1.0, 0.0, 0.0], [0.0, t1, 0.0], [0.0, 0.0, t1 * t1]];
        let g2 = [[1.0, 0.0, 0.0], [0.0, t2, 0.0], [0.0, 0.0, t2 * t2]];
        if shapes_equivalent(&g1, &g2, tol) {
            return Err(format!(
                "inequivalent pair t = {t1}, {t2} wrongly accepted"
            ));
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, fn() -> Result<(), String>)> = vec![
        ("1 gram determinant equals |disc|", criterion_gram_determinant),
        ("2 exact vs numeric gram (1e-9)", criterion_embedding_oracle),
        ("3 index square test", criterion_index_square),
        ("4 torus factorization", criterion_torus_factorization),
        ("5 carefree residue count", criterion_carefree_count),
        ("6 lipschitz principle", criterion_lipschitz),
        ("7 lattice count asymptotics", criterion_count_asymptotics),
        ("8 residue-class convergence", criterion_main_proposition_convergence),
        ("9 n_tau / M_* reconciliation", criterion_residue_reconciliation),
        ("10 reduction sanity", criterion_reduction_sanity),
    ];
    let mut failures = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(()) => println!("criterion {name}: PASS"),
            Err(msg) => {
                println!("criterion {name}: FAIL ({msg})");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
