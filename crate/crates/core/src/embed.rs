//! Numeric Gram matrices from the explicit complex embeddings. This path
//! never touches the exact matrices and serves as an independent oracle
//! for them.

use crate::field::{PureQuarticField, Sign};
use crate::gram::change_of_basis;
use num::ToPrimitive;
use num_complex::Complex64;

/// The four embedding images of (1, alpha, beta, gamma) as rows of a
/// 4 x 4 complex array indexed [embedding][basis element].
fn embedding_table(f: &PureQuarticField) -> [[Complex64; 4]; 4] {
    let nf = &f.funakura_form;
    let bc = (nf.b * nf.c) as f64;
    let bc2 = (nf.b * nf.c * nf.c) as f64;
    let root = (f.funakura_m.unsigned_abs() as f64).powf(0.25);
    // The four roots of X^4 - m are i^j beta0 with beta0 real for m > 0
    // and beta0 on the 45-degree ray for m < 0; the Gram sums over all
    // four embeddings, so their order is immaterial.
    let b0 = match f.class.sign {
        Sign::Plus => Complex64::new(root, 0.0),
        Sign::Minus => Complex64::from_polar(root, std::f64::consts::FRAC_PI_4),
    };
    let i = Complex64::new(0.0, 1.0);
    let beta_images: [Complex64; 4] = [b0, i * b0, -b0, -i * b0];
    std::array::from_fn(|k| {
        let r = beta_images[k];
        [Complex64::new(1.0, 0.0), r * r / bc, r, r * r * r / bc2]
    })
}

/// Gram matrix of the Funakura integral basis computed through the
/// Hermitian pairing on C^4; agrees with the exact matrix to floating
/// precision.
pub fn gram_numeric(f: &PureQuarticField) -> [[f64; 4]; 4] {
    let emb = embedding_table(f);
    let cb = change_of_basis(f.class.typ, f.funakura_form.a, f.funakura_form.b);
    let cbf: [[f64; 4]; 4] =
        std::array::from_fn(|i| std::array::from_fn(|j| cb[i][j].to_f64().unwrap()));
    // Embedding vectors of the integral-basis elements.
    let vectors: [[Complex64; 4]; 4] = std::array::from_fn(|i| {
        std::array::from_fn(|k| {
            (0..4)
                .map(|t| emb[k][t] * cbf[i][t])
                .sum::<Complex64>()
        })
    });
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            (0..4)
                .map(|k| (vectors[i][k] * vectors[j][k].conj()).re)
                .sum()
        })
    })
}
