//! Floating-point reduction of rank-3 shapes: Iwasawa coordinates, the
//! Minkowski fundamental domain F3, GL3(Z) reduction into it, and shape
//! equivalence testing.
//!
//! Reduction runs LLL (delta = 0.999) on a Cholesky basis of the Gram
//! matrix, then certifies the Minkowski inequalities by searching
//! unimodular matrices with small entries. Ties on the domain boundary
//! are broken by lexicographic minimality of the rounded entry vector,
//! so the reduced representative is deterministic.

use std::sync::OnceLock;
use thiserror::Error;

pub type Mat3 = [[f64; 3]; 3];
pub type IMat3 = [[i64; 3]; 3];

/// Default tolerance for fundamental-domain boundary membership.
pub const BOUNDARY_TOL: f64 = 1e-9;
/// Default tolerance for shape-equivalence comparisons.
pub const EQUIV_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReduceError {
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("no unimodular candidate in the search box lands in F3")]
    ReductionFailure,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IwasawaCoords {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub y1: f64,
    pub y2: f64,
}

impl IwasawaCoords {
    /// y3 is determined by the unit-determinant normalization.
    pub fn y3(&self) -> f64 {
        1.0 / (self.y1 * self.y2)
    }

    /// Rebuild Y = N^T A N from the coordinates.
    pub fn reconstruct(&self) -> Mat3 {
        let n = [
            [1.0, self.x1, self.x2],
            [0.0, 1.0, self.x3],
            [0.0, 0.0, 1.0],
        ];
        let a = [self.y1, self.y2, self.y3()];
        let mut y = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                y[i][j] = (0..3).map(|k| n[k][i] * a[k] * n[k][j]).sum();
            }
        }
        y
    }
}

pub fn det3(m: &Mat3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Scale to determinant 1.
pub fn normalize(g: &Mat3) -> Mat3 {
    let d = det3(g);
    let s = d.abs().powf(-1.0 / 3.0);
    std::array::from_fn(|i| std::array::from_fn(|j| g[i][j] * s))
}

/// Cholesky factor L with g = L L^T, or None when g is not positive
/// definite.
fn cholesky(g: &Mat3) -> Option<Mat3> {
    let mut l = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[i][k] * l[j][k]).sum();
            if i == j {
                let v = g[i][i] - s;
                if v <= 0.0 || !v.is_finite() {
                    return None;
                }
                l[i][j] = v.sqrt();
            } else {
                l[i][j] = (g[i][j] - s) / l[j][j];
            }
        }
    }
    Some(l)
}

pub fn is_positive_definite(g: &Mat3) -> bool {
    cholesky(g).is_some()
}

/// Iwasawa coordinates of the unit-determinant normalization of g, via
/// the symmetric decomposition Y = N^T A N.
pub fn iwasawa(g: &Mat3) -> Result<IwasawaCoords, ReduceError> {
    let y = normalize(g);
    let l = cholesky(&y).ok_or(ReduceError::NotPositiveDefinite)?;
    Ok(IwasawaCoords {
        x1: l[1][0] / l[0][0],
        x2: l[2][0] / l[0][0],
        x3: l[2][1] / l[1][1],
        y1: l[0][0] * l[0][0],
        y2: l[1][1] * l[1][1],
    })
}

/// Minkowski domain membership: the M3 inequalities on the normalized
/// matrix, each relaxed by `tol`.
pub fn in_f3(g: &Mat3, tol: f64) -> bool {
    if !is_positive_definite(g) {
        return false;
    }
    let y = normalize(g);
    let (y11, y22, y33) = (y[0][0], y[1][1], y[2][2]);
    let (y12, y13, y23) = (y[0][1], y[0][2], y[1][2]);
    if y11 > y22 + tol || y22 > y33 + tol {
        return false;
    }
    if y12 < -tol || y12 > 0.5 * y11 + tol {
        return false;
    }
    if y23 < -tol || y23 > 0.5 * y22 + tol {
        return false;
    }
    if y13.abs() > 0.5 * y11 + tol {
        return false;
    }
    for e in [[1.0, 1.0, 1.0], [1.0, 1.0, -1.0], [1.0, -1.0, 1.0], [1.0, -1.0, -1.0]] {
        let mut q = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                q += e[i] * y[i][j] * e[j];
            }
        }
        if q < y33 - tol {
            return false;
        }
    }
    true
}

/// u^T g u for an integer matrix u acting on the right.
pub fn conjugate(g: &Mat3, u: &IMat3) -> Mat3 {
    let uf: Mat3 = std::array::from_fn(|i| std::array::from_fn(|j| u[i][j] as f64));
    let mut gu = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            gu[i][j] = (0..3).map(|k| g[i][k] * uf[k][j]).sum();
        }
    }
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| uf[k][i] * gu[k][j]).sum();
        }
    }
    out
}

fn imat_mul(a: &IMat3, b: &IMat3) -> IMat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| a[i][k] * b[k][j]).sum()))
}

fn imat_det(m: &IMat3) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn imat_transpose(m: &IMat3) -> IMat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| m[j][i]))
}

const IDENTITY: IMat3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

fn unimodular_box(bound: i64) -> Vec<IMat3> {
    let range: Vec<i64> = (-bound..=bound).collect();
    let mut out = Vec::new();
    let mut entries = [0i64; 9];
    fn rec(range: &[i64], entries: &mut [i64; 9], pos: usize, out: &mut Vec<IMat3>) {
        if pos == 9 {
            let m: IMat3 = [
                [entries[0], entries[1], entries[2]],
                [entries[3], entries[4], entries[5]],
                [entries[6], entries[7], entries[8]],
            ];
            if imat_det(&m).abs() == 1 {
                out.push(m);
            }
            return;
        }
        for &v in range {
            entries[pos] = v;
            rec(range, entries, pos + 1, out);
        }
    }
    rec(&range, &mut entries, 0, &mut out);
    out
}

fn small_candidates() -> &'static [IMat3] {
    static LIST: OnceLock<Vec<IMat3>> = OnceLock::new();
    LIST.get_or_init(|| unimodular_box(1))
}

fn large_candidates() -> &'static [IMat3] {
    static LIST: OnceLock<Vec<IMat3>> = OnceLock::new();
    LIST.get_or_init(|| unimodular_box(2))
}

/// LLL (delta = 0.999) on the rows of the Cholesky basis of g; returns
/// the row transform T so that T g T^T is the reduced Gram.
fn lll_transform(g: &Mat3) -> Option<IMat3> {
    let mut basis = cholesky(g)?;
    let mut t = IDENTITY;
    let delta = 0.999;
    // Iteration cap: LLL terminates in theory, but float ties could
    // oscillate; the unimodular search downstream absorbs a partially
    // reduced basis.
    for _ in 0..10_000 {
        // Gram-Schmidt data.
        let mut ortho = basis;
        let mut mu = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..i {
                let num: f64 = (0..3).map(|k| basis[i][k] * ortho[j][k]).sum();
                let den: f64 = (0..3).map(|k| ortho[j][k] * ortho[j][k]).sum();
                mu[i][j] = num / den;
                for k in 0..3 {
                    ortho[i][k] -= mu[i][j] * ortho[j][k];
                }
            }
        }
        let norm = |v: &[f64; 3]| -> f64 { v.iter().map(|x| x * x).sum() };
        // Size reduction.
        let mut changed = false;
        for i in 1..3 {
            for j in (0..i).rev() {
                // Strict threshold: mu = +-1/2 exactly (common for these
                // structured lattices) must not trigger a reduction, or
                // rounding flips it between +1/2 and -1/2 forever.
                if mu[i][j].abs() <= 0.5 + 1e-9 {
                    continue;
                }
                let r = mu[i][j].round();
                if r != 0.0 {
                    changed = true;
                    for k in 0..3 {
                        basis[i][k] -= r * basis[j][k];
                        t[i][k] -= r as i64 * t[j][k];
                    }
                    for l in 0..=j {
                        mu[i][l] -= r * mu[j][l];
                    }
                }
            }
        }
        if changed {
            continue;
        }
        // Lovasz swaps.
        let mut swapped = false;
        for i in 0..2 {
            let lhs = norm(&ortho[i + 1]) + mu[i + 1][i] * mu[i + 1][i] * norm(&ortho[i]);
            if lhs < delta * norm(&ortho[i]) {
                basis.swap(i, i + 1);
                t.swap(i, i + 1);
                swapped = true;
                break;
            }
        }
        if !swapped {
            return Some(t);
        }
    }
    Some(t)
}

/// Rounded entry vector used for deterministic tie-breaking among
/// fundamental-domain representatives.
fn canonical_key(y: &Mat3) -> [i64; 6] {
    let vals = [y[0][0], y[0][1], y[0][2], y[1][1], y[1][2], y[2][2]];
    std::array::from_fn(|i| (vals[i] * 1e9).round() as i64)
}

/// Reduce g into the Minkowski domain: returns the unit-determinant
/// reduced Gram and the unimodular u with u^T g u proportional to it.
pub fn minkowski_reduce(g: &Mat3) -> Result<(Mat3, IMat3), ReduceError> {
    let t = lll_transform(g).ok_or(ReduceError::NotPositiveDefinite)?;
    let g1 = conjugate(g, &imat_transpose(&t));
    let mut best: Option<([i64; 6], Mat3, IMat3)> = None;
    let scan = |cands: &[IMat3], best: &mut Option<([i64; 6], Mat3, IMat3)>| {
        for v in cands {
            let cand = conjugate(&g1, v);
            if in_f3(&cand, BOUNDARY_TOL) {
                let y = normalize(&cand);
                let key = canonical_key(&y);
                if best.as_ref().map_or(true, |(k, _, _)| key < *k) {
                    *best = Some((key, y, *v));
                }
            }
        }
    };
    scan(small_candidates(), &mut best);
    if best.is_none() {
        scan(large_candidates(), &mut best);
    }
    let (_, reduced, v) = best.ok_or(ReduceError::ReductionFailure)?;
    let u = imat_mul(&imat_transpose(&t), &v);
    Ok((reduced, u))
}

/// Shape equality in GL3(Z)\H3: reduce both, compare entrywise; near
/// the boundary also sweep the small unimodular orbit before declaring
/// inequivalence.
pub fn shapes_equivalent(g1: &Mat3, g2: &Mat3, tol: f64) -> bool {
    let (Ok((r1, _)), Ok((r2, _))) = (minkowski_reduce(g1), minkowski_reduce(g2)) else {
        return false;
    };
    let close = |a: &Mat3, b: &Mat3| -> bool {
        (0..3).all(|i| (0..3).all(|j| (a[i][j] - b[i][j]).abs() <= tol))
    };
    if close(&r1, &r2) {
        return true;
    }
    small_candidates()
        .iter()
        .any(|v| close(&normalize(&conjugate(&r1, v)), &r2))
}
