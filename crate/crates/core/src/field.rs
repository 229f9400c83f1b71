//! Pure quartic fields Q(m^(1/4)): normal forms, type classification, and
//! discriminants.
//!
//! Every nonzero fourth-power-free integer m factors uniquely as
//! m = a*b^2*c^3 with a, b, c pairwise coprime and squarefree. Two
//! normalizations of that triple are used: the *counting* form demands
//! |a| >= c unconditionally, the *funakura* form demands c odd and
//! |a| >= c when a is odd. The funakura form is the one for which the
//! integral-basis table and discriminant formula apply; passing between
//! the two replaces m by the fourth-power-free part of m^3.

use crate::factor::{factor, Factorization};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("degenerate: |m| must be at least 2")]
    Degenerate,
    #[error("fourth power not free: p^4 divides m for p = {0}")]
    FourthPowerNotFree(u64),
    #[error("reducible: m is a perfect square")]
    Reducible,
    #[error("excluded case X^4 + 4 (m = -4)")]
    ExcludedMinusFour,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldType {
    I,
    II,
    III,
    IV,
    V,
}

impl FieldType {
    pub const ALL: [FieldType; 5] = [
        FieldType::I,
        FieldType::II,
        FieldType::III,
        FieldType::IV,
        FieldType::V,
    ];

    /// Exponent of 2 in |disc|: 2 for I and V, 4 for III and IV, 8 for II.
    pub fn two_power(self) -> u32 {
        match self {
            FieldType::I | FieldType::V => 2,
            FieldType::III | FieldType::IV => 4,
            FieldType::II => 8,
        }
    }

    /// Modulus over which the local density M_* is tabulated.
    pub fn residue_modulus(self) -> u64 {
        match self {
            FieldType::I => 8,
            FieldType::II => 4,
            FieldType::III => 16,
            FieldType::IV | FieldType::V => 32,
        }
    }

    /// Residue classes of m (mod `residue_modulus`) belonging to this type.
    pub fn residue_set(self) -> &'static [u64] {
        match self {
            FieldType::I => &[1],
            FieldType::II => &[2, 3],
            // 4 mod 16, together with 5 mod 8 lifted to {5, 13} mod 16.
            FieldType::III => &[4, 5, 13],
            FieldType::IV => &[12],
            FieldType::V => &[28],
        }
    }

    /// Residue classes mod 32 belonging to this type.
    pub fn residues_mod_32(self) -> Vec<u64> {
        let modulus = self.residue_modulus();
        (0..32)
            .filter(|t| self.residue_set().contains(&(t % modulus)))
            .collect()
    }
}

impl std::fmt::Display for FieldType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FieldType::I => "I",
            FieldType::II => "II",
            FieldType::III => "III",
            FieldType::IV => "IV",
            FieldType::V => "V",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for FieldType {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "I" | "i" | "1" => Ok(FieldType::I),
            "II" | "ii" | "2" => Ok(FieldType::II),
            "III" | "iii" | "3" => Ok(FieldType::III),
            "IV" | "iv" | "4" => Ok(FieldType::IV),
            "V" | "v" | "5" => Ok(FieldType::V),
            other => Err(format!("unknown field type: {other}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of(m: i64) -> Sign {
        if m >= 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    Counting,
    Funakura,
}

/// A normalized triple (a, b, c) with m = a*b^2*c^3. The sign of m rides
/// on `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormalForm {
    pub a: i64,
    pub b: u64,
    pub c: u64,
    pub convention: Convention,
}

impl NormalForm {
    pub fn sign(&self) -> Sign {
        Sign::of(self.a)
    }

    pub fn abs_a(&self) -> u64 {
        self.a.unsigned_abs()
    }

    /// The integer a*b^2*c^3 this form represents.
    pub fn m(&self) -> i64 {
        self.a * (self.b * self.b) as i64 * (self.c * self.c * self.c) as i64
    }
}

/// Type, sign, and the 2-exponent data of a pure quartic field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldClass {
    pub typ: FieldType,
    pub sign: Sign,
    pub two_power: u32,
    pub r_star: u32,
}

impl FieldClass {
    fn new(typ: FieldType, sign: Sign) -> FieldClass {
        let k = typ.two_power();
        FieldClass {
            typ,
            sign,
            two_power: k,
            r_star: k,
        }
    }
}

/// A pure quartic field together with both normal forms, its class, and
/// its discriminant (stored as the formula value -2^k a^3 b^2 c^3, which
/// is positive when m < 0; reports use the absolute value).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PureQuarticField {
    pub m: i64,
    pub counting_form: NormalForm,
    pub funakura_form: NormalForm,
    pub funakura_m: i64,
    pub class: FieldClass,
    pub discriminant: i128,
}

/// Raw exponent split of a fourth-power-free m: primes with exponent 1
/// go to a, exponent 2 to b, exponent 3 to c.
pub fn raw_abc(m: i64) -> Result<(i64, u64, u64), FieldError> {
    if m.unsigned_abs() <= 1 {
        return Err(FieldError::Degenerate);
    }
    let f: Factorization = factor(m.unsigned_abs());
    let mut a = 1u64;
    let mut b = 1u64;
    let mut c = 1u64;
    for &(p, e) in &f.factors {
        match e {
            1 => a *= p,
            2 => b *= p,
            3 => c *= p,
            _ => return Err(FieldError::FourthPowerNotFree(p)),
        }
    }
    Ok((m.signum() * a as i64, b, c))
}

/// Swap (a, b, c) -> (sign * c, b, |a|): passes to the fourth-power-free
/// part of m^3 with the sign kept on the first coordinate.
fn swap(a: i64, b: u64, c: u64) -> (i64, u64, u64) {
    (a.signum() * c as i64, b, a.unsigned_abs())
}

/// Counting normal form: conditions (i')-(iv'), |a| >= c unconditionally.
pub fn counting_normal_form(m: i64) -> Result<NormalForm, FieldError> {
    if m == -4 {
        return Err(FieldError::ExcludedMinusFour);
    }
    let (mut a, b, mut c) = raw_abc(m)?;
    if a.unsigned_abs() < c {
        (a, _, c) = swap(a, b, c);
    }
    if a == 1 {
        return Err(FieldError::Reducible);
    }
    Ok(NormalForm {
        a,
        b,
        c,
        convention: Convention::Counting,
    })
}

/// Funakura normal form: conditions (i)-(v), c odd and |a| >= c when a
/// is odd.
pub fn funakura_normal_form(m: i64) -> Result<NormalForm, FieldError> {
    if m == -4 {
        return Err(FieldError::ExcludedMinusFour);
    }
    let (mut a, b, mut c) = raw_abc(m)?;
    if c % 2 == 0 {
        (a, _, c) = swap(a, b, c);
    } else if a % 2 != 0 && a.unsigned_abs() < c {
        (a, _, c) = swap(a, b, c);
    }
    if a == 1 {
        return Err(FieldError::Reducible);
    }
    Ok(NormalForm {
        a,
        b,
        c,
        convention: Convention::Funakura,
    })
}

/// Type of the residue t in [0, 32) with 8 not dividing t.
pub fn classify_residue(t: u64) -> Option<FieldType> {
    debug_assert!(t < 32);
    if t % 8 == 0 {
        return None;
    }
    let typ = if t % 8 == 1 {
        FieldType::I
    } else if t % 4 == 2 || t % 4 == 3 {
        FieldType::II
    } else if t % 16 == 4 || t % 8 == 5 {
        FieldType::III
    } else if t == 12 {
        FieldType::IV
    } else {
        debug_assert_eq!(t, 28);
        FieldType::V
    };
    Some(typ)
}

/// Classify m by the residue class of its funakura-form representative,
/// which is never divisible by 8.
pub fn classify(m: i64) -> Result<FieldClass, FieldError> {
    let nf = funakura_normal_form(m)?;
    let fm = nf.m();
    let t = fm.rem_euclid(32) as u64;
    let typ = classify_residue(t).expect("funakura form is not divisible by 8");
    Ok(FieldClass::new(typ, Sign::of(m)))
}

/// Discriminant formula -2^k a^3 b^2 c^3 applied to a funakura form.
pub fn discriminant(nf: &NormalForm, typ: FieldType) -> i128 {
    debug_assert_eq!(nf.convention, Convention::Funakura);
    let a = nf.a as i128;
    let b = nf.b as i128;
    let c = nf.c as i128;
    -(1i128 << typ.two_power()) * a * a * a * b * b * c * c * c
}

impl PureQuarticField {
    pub fn new(m: i64) -> Result<PureQuarticField, FieldError> {
        let counting_form = counting_normal_form(m)?;
        let funakura_form = funakura_normal_form(m)?;
        let class = classify(m)?;
        Ok(PureQuarticField {
            m,
            counting_form,
            funakura_m: funakura_form.m(),
            discriminant: discriminant(&funakura_form, class.typ),
            funakura_form,
            class,
        })
    }

    pub fn abs_discriminant(&self) -> i128 {
        self.discriminant.abs()
    }
}

/// True iff -256 * funakura_m^3 / disc is a positive integer perfect
/// square. The numerator is disc(X^4 - m) for the funakura representative,
/// so the ratio is the squared index of Z[m^(1/4)] in the maximal order.
pub fn index_square_check(f: &PureQuarticField) -> bool {
    let fm = f.funakura_m as i128;
    let poly_disc = -256 * fm * fm * fm;
    if f.discriminant == 0 || poly_disc % f.discriminant != 0 {
        return false;
    }
    let ratio = poly_disc / f.discriminant;
    if ratio <= 0 {
        return false;
    }
    let r = (ratio as f64).sqrt().round() as i128;
    (r - 1..=r + 1).any(|s| s * s == ratio)
}

/// Translate a discriminant bound X into the linear bound N on
/// |a| b^(2/3) c: N = (X / 2^k)^(1/3).
pub fn disc_bound_to_n(x: f64, class: &FieldClass) -> f64 {
    (x / (1u64 << class.two_power) as f64).cbrt()
}
