//! Exact Gram matrices of the rings of integers of pure quartic fields,
//! their projections to the trace-zero lattice, and the torus-orbit
//! factorization of the projected shape.
//!
//! All entries live in Q(sqrt(d)) with d = |a| c taken from the funakura
//! form, so determinants and positive-definiteness are decided exactly.

use crate::field::{Convention, FieldType, NormalForm, PureQuarticField};
use crate::quadratic::QuadraticReal;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use thiserror::Error;

pub type Mat4Q = [[BigRational; 4]; 4];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gram4 {
    pub entries: [[QuadraticReal; 4]; 4],
    pub d: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gram3 {
    pub entries: [[QuadraticReal; 3]; 3],
    pub d: u64,
}

impl Gram4 {
    pub fn to_f64(&self) -> [[f64; 4]; 4] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.entries[i][j].eval()))
    }

    /// Exact determinant; the Gram determinant of an integral basis, so
    /// always a rational integer.
    pub fn det(&self) -> BigInt {
        det4(&self.entries)
            .to_integer()
            .expect("Gram determinant must be a rational integer")
    }

    /// All four leading principal minors have positive exact sign.
    pub fn is_positive_definite(&self) -> bool {
        leading_minors_positive(&self.entries)
    }
}

impl Gram3 {
    pub fn to_f64(&self) -> [[f64; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.entries[i][j].eval()))
    }

    pub fn is_positive_definite(&self) -> bool {
        let m1 = self.entries[0][0].clone();
        let m2 = det2(&self.entries, [0, 1]);
        let m3 = det3_of(&self.entries, [0, 1, 2]);
        m1.is_positive() && m2.is_positive() && m3.is_positive()
    }
}

fn det2(m: &[[QuadraticReal; 3]; 3], idx: [usize; 2]) -> QuadraticReal {
    let [i, j] = idx;
    &(&m[i][i] * &m[j][j]) - &(&m[i][j] * &m[j][i])
}

fn det3_of(m: &[[QuadraticReal; 3]; 3], idx: [usize; 3]) -> QuadraticReal {
    let a = |r: usize, c: usize| &m[idx[r]][idx[c]];
    let mut acc = QuadraticReal::zero(m[0][0].radicand());
    for (c0, c1, c2, sgn) in [
        (0, 1, 2, 1i64),
        (1, 2, 0, 1),
        (2, 0, 1, 1),
        (2, 1, 0, -1),
        (0, 2, 1, -1),
        (1, 0, 2, -1),
    ] {
        let term = &(&(a(0, c0) * a(1, c1)) * a(2, c2))
            * &BigRational::from_integer(BigInt::from(sgn));
        acc = &acc + &term;
    }
    acc
}

fn det4(m: &[[QuadraticReal; 4]; 4]) -> QuadraticReal {
    let d = m[0][0].radicand();
    let mut acc = QuadraticReal::zero(d);
    for col in 0..4 {
        let minor: [[QuadraticReal; 3]; 3] = std::array::from_fn(|i| {
            let mut row = Vec::with_capacity(3);
            for j in 0..4 {
                if j != col {
                    row.push(m[i + 1][j].clone());
                }
            }
            [row[0].clone(), row[1].clone(), row[2].clone()]
        });
        let cof = det3_of(&minor, [0, 1, 2]);
        let signed = if col % 2 == 0 { cof } else { -(&cof) };
        acc = &acc + &(&m[0][col] * &signed);
    }
    acc
}

fn leading_minors_positive(m: &[[QuadraticReal; 4]; 4]) -> bool {
    if !m[0][0].is_positive() {
        return false;
    }
    let m2 = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
    if !m2.is_positive() {
        return false;
    }
    let top3: [[QuadraticReal; 3]; 3] =
        std::array::from_fn(|i| std::array::from_fn(|j| m[i][j].clone()));
    if !det3_of(&top3, [0, 1, 2]).is_positive() {
        return false;
    }
    det4(m).is_positive()
}

/// Radicand shared by all Gram entries of the field: d = |a| c of the
/// funakura form.
pub fn radicand(f: &PureQuarticField) -> u64 {
    f.funakura_form.abs_a() * f.funakura_form.c
}

/// Diagonal Gram matrix of the orthogonal core basis (1, alpha, beta,
/// gamma): diag(4, 4|a|c, 4bc*sqrt(d), 4|a|b*sqrt(d)).
pub fn gram_type_ii(f: &PureQuarticField) -> Gram4 {
    let d = radicand(f);
    let nf = &f.funakura_form;
    let (abs_a, b, c) = (nf.abs_a() as i64, nf.b as i64, nf.c as i64);
    let diag = [
        QuadraticReal::from_int(4, d),
        QuadraticReal::from_int(4 * abs_a * c, d),
        QuadraticReal::sqrt_d_times(4 * b * c, 1, d),
        QuadraticReal::sqrt_d_times(4 * abs_a * b, 1, d),
    ];
    let zero = QuadraticReal::zero(d);
    let entries = std::array::from_fn(|i| {
        std::array::from_fn(|j| if i == j { diag[i].clone() } else { zero.clone() })
    });
    Gram4 { entries, d }
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// The change-of-basis matrix C_* expressing the integral basis
/// (1, lambda, mu, nu) in terms of (1, alpha, beta, gamma). Types I and
/// V depend on the funakura (a, b).
pub fn change_of_basis(typ: FieldType, a: i64, b: u64) -> Mat4Q {
    let b = b as i64;
    let z = BigRational::zero;
    let one = BigRational::one;
    match typ {
        FieldType::I => [
            [one(), z(), z(), z()],
            [rat(1, 2), rat(1, 2), z(), z()],
            [z(), z(), one(), z()],
            [rat(a * b, 4), rat(1, 4), rat(b, 4), rat(1, 4)],
        ],
        FieldType::II => [
            [one(), z(), z(), z()],
            [z(), one(), z(), z()],
            [z(), z(), one(), z()],
            [z(), z(), z(), one()],
        ],
        FieldType::III => [
            [one(), z(), z(), z()],
            [rat(1, 2), rat(1, 2), z(), z()],
            [z(), z(), one(), z()],
            [z(), z(), rat(1, 2), rat(1, 2)],
        ],
        FieldType::IV => [
            [one(), z(), z(), z()],
            [z(), one(), z(), z()],
            [rat(1, 2), rat(1, 2), rat(1, 2), z()],
            [z(), z(), rat(1, 2), rat(1, 2)],
        ],
        FieldType::V => [
            [one(), z(), z(), z()],
            [z(), one(), z(), z()],
            [rat(1, 2), rat(1, 2), rat(1, 2), z()],
            [z(), rat(1, 2), rat(b, 8), rat(1, 4)],
        ],
    }
}

/// Exact Gram matrix of the Funakura integral basis: C_* D C_*^T with D
/// the diagonal core.
pub fn gram(f: &PureQuarticField) -> Gram4 {
    let core = gram_type_ii(f);
    let c = change_of_basis(f.class.typ, f.funakura_form.a, f.funakura_form.b);
    let d = core.d;
    let diag: [QuadraticReal; 4] = std::array::from_fn(|t| core.entries[t][t].clone());
    let entries = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = QuadraticReal::zero(d);
            for (t, dt) in diag.iter().enumerate() {
                if c[i][t].is_zero() || c[j][t].is_zero() {
                    continue;
                }
                let coeff = &c[i][t] * &c[j][t];
                acc = &acc + &(dt * &coeff);
            }
            acc
        })
    });
    Gram4 { entries, d }
}

/// Gram matrix of the orthogonal projections of basis elements 2..4 onto
/// the complement of j(1): G3[i][j] = g[i+1][j+1] - g[i+1][0] g[0][j+1] / g[0][0].
pub fn project_perp(g: &Gram4) -> Gram3 {
    let g00 = &g.entries[0][0];
    let entries = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let corr = &(&g.entries[i + 1][0] * &g.entries[0][j + 1]) / g00;
            &g.entries[i + 1][j + 1] - &corr
        })
    });
    Gram3 { entries, d: g.d }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("torus factorization mismatch at entry ({row},{col}): projected {projected}, predicted {predicted}")]
pub struct TorusMismatch {
    pub row: usize,
    pub col: usize,
    pub projected: String,
    pub predicted: String,
}

/// Verifies exactly that the projected Gram equals
/// 4|a|bc * C'_* diag(1/b, sqrt(c/|a|), sqrt(|a|/c)) C'_*^T,
/// where C'_* is the lower-right 3x3 block of C_* and the diagonal is in
/// (alpha, beta, gamma) order.
pub fn torus_factorization_check(f: &PureQuarticField) -> Result<(), TorusMismatch> {
    let projected = project_perp(&gram(f));
    let d = projected.d;
    let nf = &f.funakura_form;
    let (abs_a, b, c) = (nf.abs_a() as i64, nf.b as i64, nf.c as i64);
    // sqrt(c/|a|) = sqrt(d)/|a| and sqrt(|a|/c) = sqrt(d)/c for d = |a|c.
    let diag = [
        QuadraticReal::new(rat(1, b), BigRational::zero(), d),
        QuadraticReal::sqrt_d_times(1, abs_a, d),
        QuadraticReal::sqrt_d_times(1, c, d),
    ];
    let cb = change_of_basis(f.class.typ, nf.a, nf.b);
    let scale = rat(4 * abs_a * b * c, 1);
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = QuadraticReal::zero(d);
            for (t, dt) in diag.iter().enumerate() {
                let coeff = &cb[i + 1][t + 1] * &cb[j + 1][t + 1];
                acc = &acc + &(dt * &coeff);
            }
            let predicted = &acc * &scale;
            if predicted != projected.entries[i][j] {
                return Err(TorusMismatch {
                    row: i,
                    col: j,
                    projected: projected.entries[i][j].to_string(),
                    predicted: predicted.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Shape parameters (lambda1, lambda2) = (sqrt(c/|a|), 1/b) of a
/// counting-convention normal form; lambda1 is kept as the exact
/// rational lambda1^2 = c/|a|.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShapeParams {
    /// Reduced numerator/denominator of lambda1^2 = c / |a|.
    pub lambda1_sq: (u64, u64),
    /// Denominator b of lambda2 = 1/b.
    pub b: u64,
}

impl ShapeParams {
    pub fn lambda1(&self) -> f64 {
        (self.lambda1_sq.0 as f64 / self.lambda1_sq.1 as f64).sqrt()
    }

    pub fn lambda2(&self) -> f64 {
        1.0 / self.b as f64
    }
}

pub fn shape_params(nf: &NormalForm) -> ShapeParams {
    debug_assert_eq!(nf.convention, Convention::Counting);
    let g = num::integer::gcd(nf.c, nf.abs_a());
    ShapeParams {
        lambda1_sq: (nf.c / g, nf.abs_a() / g),
        b: nf.b,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PureQuarticField;

    fn fld(m: i64) -> PureQuarticField {
        PureQuarticField::new(m).unwrap()
    }

    #[test]
    fn type_ii_core_m2() {
        let g = gram_type_ii(&fld(2));
        let diag: Vec<String> = (0..4).map(|i| g.entries[i][i].to_string()).collect();
        assert_eq!(diag, ["4", "8", "4*sqrt(2)", "8*sqrt(2)"]);
    }

    #[test]
    fn type_ii_core_negative_m() {
        let g = gram_type_ii(&fld(-7));
        let diag: Vec<String> = (0..4).map(|i| g.entries[i][i].to_string()).collect();
        assert_eq!(diag, ["4", "28", "4*sqrt(7)", "28*sqrt(7)"]);
    }

    #[test]
    fn type_ii_core_m12() {
        let g = gram_type_ii(&fld(12));
        let diag: Vec<String> = (0..4).map(|i| g.entries[i][i].to_string()).collect();
        assert_eq!(diag, ["4", "12", "8*sqrt(3)", "24*sqrt(3)"]);
    }

    #[test]
    fn change_of_basis_rows() {
        let c3 = change_of_basis(FieldType::III, 5, 1);
        assert_eq!(c3[1], [rat(1, 2), rat(1, 2), rat(0, 1), rat(0, 1)]);
        assert_eq!(c3[3], [rat(0, 1), rat(0, 1), rat(1, 2), rat(1, 2)]);
        let c5 = change_of_basis(FieldType::V, 7, 2);
        assert_eq!(c5[3], [rat(0, 1), rat(1, 2), rat(1, 4), rat(1, 4)]);
    }

    #[test]
    fn gram_entries_match_propositions() {
        // Type II: identity change of basis.
        assert_eq!(gram(&fld(2)), gram_type_ii(&fld(2)));
        // Type III, m = 5: entry (2,2) is 1 + alpha^2 = 6.
        let g5 = gram(&fld(5));
        assert_eq!(g5.entries[1][1].to_string(), "6");
        // Type I, m = 17: entry (1,4) is ab = 17.
        let g17 = gram(&fld(17));
        assert_eq!(g17.entries[0][3].to_string(), "17");
        // Type IV, m = 12: entry (3,3) is 1 + alpha^2 + beta^2 = 4 + 2 sqrt(3).
        let g12 = gram(&fld(12));
        assert_eq!(g12.entries[2][2].to_string(), "4+2*sqrt(3)");
    }

    #[test]
    fn det_equals_abs_discriminant() {
        for m in [2i64, 5, 12, 17, 28, 88, -7, -2, -12, 1080] {
            let f = fld(m);
            assert_eq!(
                gram(&f).det(),
                BigInt::from(f.abs_discriminant()),
                "m = {m}"
            );
            assert!(gram(&f).is_positive_definite(), "m = {m}");
        }
    }

    #[test]
    fn projection_examples() {
        // Type II: projection leaves the lower-right block unchanged.
        let f = fld(2);
        let p = project_perp(&gram(&f));
        let diag: Vec<String> = (0..3).map(|i| p.entries[i][i].to_string()).collect();
        assert_eq!(diag, ["8", "4*sqrt(2)", "8*sqrt(2)"]);
        // Type I, m = 17: entry (1,1) is (1 + alpha^2) - 4/4 = 17.
        let p17 = project_perp(&gram(&fld(17)));
        assert_eq!(p17.entries[0][0].to_string(), "17");
        assert!(p17.is_positive_definite());
    }

    #[test]
    fn torus_factorization_examples() {
        for m in [2i64, 5, 17, 28, 12, 88, -7, -12, -28] {
            torus_factorization_check(&fld(m)).unwrap();
        }
    }

    #[test]
    fn shape_param_examples() {
        let f = fld(2);
        let sp = shape_params(&f.counting_form);
        assert_eq!(sp.lambda1_sq, (1, 2));
        assert_eq!(sp.b, 1);
        let sp = shape_params(&fld(12).counting_form);
        assert_eq!(sp.lambda1_sq, (1, 3));
        assert_eq!(sp.b, 2);
        let sp = shape_params(&fld(-7).counting_form);
        assert_eq!(sp.lambda1_sq, (1, 7));
        assert_eq!(sp.b, 1);
    }
}
