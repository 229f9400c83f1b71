//! Local densities and the limiting measures: the multiplicative weight
//! alpha, its partial sums psi, the 2-adic residue counts n_tau and
//! M_*, and the box measure mu-hat on shape-parameter rectangles.

use crate::factor;
use crate::field::FieldType;
use num::rational::Ratio;
use num::ToPrimitive;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DensityError {
    #[error("tau = {0} is divisible by 8")]
    InvalidTau(u64),
}

/// zeta(2) = pi^2 / 6.
pub const ZETA2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;

/// alpha(n) = n^{-2/3} prod_{l | n} (l-1)/(l+1) for squarefree n, else 0.
pub fn alpha(n: u64) -> f64 {
    let f = factor::factor(n);
    if !f.is_squarefree() {
        return 0.0;
    }
    let mut v = (n as f64).powf(-2.0 / 3.0);
    for &(l, _) in &f.factors {
        v *= (l - 1) as f64 / (l + 1) as f64;
    }
    v
}

/// Compensated (Kahan) summation of a sequence of terms.
fn kahan_sum(terms: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for t in terms {
        let y = t - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
    }
    sum
}

/// psi(x) = sum_{n <= floor(x)} alpha(n).
pub fn psi(x: f64) -> f64 {
    kahan_sum((1..=(x.floor() as u64)).map(alpha))
}

/// n_tau(b): pairs (a, c) in (Z/32)^2 with a b^2 c^3 = tau (mod 32).
pub fn n_tau(b: u64, tau: u64) -> Result<u64, DensityError> {
    let tau = tau % 32;
    if tau % 8 == 0 {
        return Err(DensityError::InvalidTau(tau));
    }
    let b2 = (b % 32) * (b % 32) % 32;
    let mut count = 0;
    for a in 0..32u64 {
        for c in 0..32u64 {
            if a * b2 % 32 * (c * c % 32) % 32 * c % 32 == tau {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// M_*(b): density of pairs (a, c) modulo the type's residue modulus
/// with a b^2 c^3 landing in the type's residue set.
pub fn m_star(typ: FieldType, b: u64) -> Ratio<u64> {
    let modulus = typ.residue_modulus();
    let residues = typ.residue_set();
    let b2 = (b % modulus) * (b % modulus) % modulus;
    let mut count = 0;
    for a in 0..modulus {
        for c in 0..modulus {
            let t = a * b2 % modulus * (c * c % modulus) % modulus * c % modulus;
            if residues.contains(&t) {
                count += 1;
            }
        }
    }
    Ratio::new(count, modulus * modulus)
}

/// psi_*(x) = sum_{n <= floor(x)} M_*(n) alpha(n).
pub fn psi_star(typ: FieldType, x: f64) -> f64 {
    kahan_sum(
        (1..=(x.floor() as u64)).map(|n| m_star(typ, n).to_f64().unwrap() * alpha(n)),
    )
}

/// psi_tau(x) = sum_{n <= floor(x)} n_tau(n) alpha(n).
pub fn psi_tau(tau: u64, x: f64) -> Result<f64, DensityError> {
    if tau % 8 == 0 {
        return Err(DensityError::InvalidTau(tau % 32));
    }
    Ok(kahan_sum((1..=(x.floor() as u64)).map(|n| {
        n_tau(n, tau).unwrap() as f64 * alpha(n)
    })))
}

/// Type-weighted alpha mass over integers n in the closed interval
/// [lo, hi]; the analogue of [`psi_interval`] for psi_*.
pub fn psi_star_interval(typ: FieldType, lo: f64, hi: f64) -> f64 {
    psi_star(typ, hi) - psi_star(typ, lo.ceil() - 1.0)
}

/// Rectangle [R1lo, R1hi] x [R2lo, R2hi] in the shape-parameter plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub r1lo: f64,
    pub r1hi: f64,
    pub r2lo: f64,
    pub r2hi: f64,
}

impl Rect {
    pub fn new(r1lo: f64, r1hi: f64, r2lo: f64, r2hi: f64) -> Rect {
        assert!(
            1.0 <= r1lo && r1lo <= r1hi && 1.0 <= r2lo && r2lo <= r2hi,
            "invalid rectangle"
        );
        Rect { r1lo, r1hi, r2lo, r2hi }
    }

    /// Rectangle anchored at (1, 1).
    pub fn anchored(r1: f64, r2: f64) -> Rect {
        Rect::new(1.0, r1, 1.0, r2)
    }
}

/// Mass of the atomic b-direction measure on the closed interval
/// [lo, hi]: the alpha-sum over integers n with lo <= n <= hi, written
/// as a difference of cumulative psi values.
pub fn psi_interval(lo: f64, hi: f64) -> f64 {
    psi(hi) - psi(lo.ceil() - 1.0)
}

/// mu-hat of a rectangle: (1/2)(log R1hi - log R1lo) times the alpha
/// mass of [R2lo, R2hi]. The measure is atomic at integer b, so closed
/// intervals keep the atom at an integer lower endpoint.
pub fn mu_hat_box(rect: &Rect) -> f64 {
    0.5 * (rect.r1hi.ln() - rect.r1lo.ln()) * psi_interval(rect.r2lo, rect.r2hi)
}
