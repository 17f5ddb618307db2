//! Rank-3 parameter calculus: subdegrees, intersection numbers, graph
//! eigenvalues and multiplicities, the closed forms for the action of
//! `Ω_{2m+1}(3)` on non-singular points of one type, and the integer
//! equation checks applied to `(c, d)` orbit data.
//!
//! Everything is exact integer arithmetic; rational identities are checked
//! with denominators cleared.

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, ParamError};
use crate::geometry::{QuadraticSpace, Sign};
use crate::linalg::dot;

/// Full parameter tuple of a rank-3 action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RankThreeParams {
    pub total: i64,
    pub k: i64,
    pub l: i64,
    pub lambda: i64,
    pub mu: i64,
    pub lambda1: i64,
    pub mu1: i64,
    pub sqrt_d: i64,
    pub s: i64,
    pub t: i64,
    pub f_s: i64,
    pub f_t: i64,
}

/// Which of the two non-principal eigenvalues plays the role of `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Eigen {
    S,
    T,
}

impl Eigen {
    pub const BOTH: [Eigen; 2] = [Eigen::S, Eigen::T];

    pub fn name(self) -> &'static str {
        match self {
            Eigen::S => "s",
            Eigen::T => "t",
        }
    }
}

/// `(c, d)` data of one subgroup orbit through a base point of type `xi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CdPair {
    pub c: i64,
    pub d: i64,
    pub xi: Sign,
}

impl CdPair {
    pub fn new(c: i64, d: i64, xi: Sign) -> Self {
        CdPair { c, d, xi }
    }
    pub fn orbit_size(&self) -> i64 {
        1 + self.c + self.d
    }
}

/// Exact integer square root, if `n` is a perfect square.
pub fn exact_sqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

fn exact_div(a: i128, b: i128) -> Option<i128> {
    (b != 0 && a % b == 0).then(|| a / b)
}

/// Parameters from `(k, l, λ, μ)`.
///
/// Rejects tuples whose discriminant is not a perfect square or whose
/// multiplicities are not positive integers. The counting identity
/// `μl = k(k−1−λ)` is reported by [`RankThreeParams::counting_identity_holds`]
/// rather than enforced.
pub fn generic_params(k: i64, l: i64, lambda: i64, mu: i64) -> Result<RankThreeParams, ParamError> {
    if k < 0 || l < 0 || lambda < 0 || mu < 0 {
        return Err(ParamError::NotRank3(format!("negative entry in ({k},{l},{lambda},{mu})")));
    }
    let (k, l, lambda, mu) = (k as i128, l as i128, lambda as i128, mu as i128);
    let disc = (lambda - mu).pow(2) + 4 * (k - mu);
    let sd = exact_sqrt(disc).ok_or_else(|| ParamError::NotRank3(format!("D = {disc} is not a square")))?;
    let s = exact_div(lambda - mu + sd, 2).ok_or_else(|| ParamError::NotRank3("s is not an integer".into()))?;
    let t = exact_div(lambda - mu - sd, 2).ok_or_else(|| ParamError::NotRank3("t is not an integer".into()))?;
    let f_s = exact_div(k + t * (k + l), t - s);
    let f_t = exact_div(k + s * (k + l), s - t);
    let (f_s, f_t) = match (f_s, f_t) {
        (Some(a), Some(b)) if a > 0 && b > 0 => (a, b),
        _ => return Err(ParamError::NotRank3("multiplicities are not positive integers".into())),
    };
    let total = k + l + 1;
    if 1 + f_s + f_t != total {
        return Err(ParamError::NotRank3(format!("1 + f_s + f_t = {} differs from {total}", 1 + f_s + f_t)));
    }
    Ok(RankThreeParams {
        total: total as i64,
        k: k as i64,
        l: l as i64,
        lambda: lambda as i64,
        mu: mu as i64,
        lambda1: (l - k + mu - 1) as i64,
        mu1: (l - k + lambda + 1) as i64,
        sqrt_d: sd as i64,
        s: s as i64,
        t: t as i64,
        f_s: f_s as i64,
        f_t: f_t as i64,
    })
}

fn pow3(e: u32) -> i128 {
    3i128.pow(e)
}

/// Closed forms for `Ω_{2m+1}(3)` on the non-singular points of type `xi`.
pub fn odd_orthogonal_params(m: u32, xi: Sign) -> Result<RankThreeParams, ParamError> {
    if m < 2 {
        return Err(ParamError::BadM { m, min: 2 });
    }
    let x = xi.as_i64() as i128;
    let (a, b) = (pow3(m), pow3(m - 1));
    let k = b * (a - x) / 2;
    let l = (a - x) * (b + x);
    let lm = b * (b - x) / 2;
    let p = generic_params(k as i64, l as i64, lm as i64, lm as i64)?;
    debug_assert_eq!(p.total as i128, a * (a + x) / 2);
    Ok(p)
}

impl RankThreeParams {
    /// `μl = k(k−1−λ)`.
    pub fn counting_identity_holds(&self) -> bool {
        self.mu as i128 * self.l as i128 == self.k as i128 * (self.k - 1 - self.lambda) as i128
    }

    pub fn eigenvalue(&self, r: Eigen) -> i64 {
        match r {
            Eigen::S => self.s,
            Eigen::T => self.t,
        }
    }

    /// Eigenvalue of the `Γ` operator on the `r`-eigenspace of `Δ`.
    pub fn gamma_eigenvalue(&self, r: Eigen) -> i64 {
        -(self.eigenvalue(r) + 1)
    }

    /// Which eigenvalue labels the eigenspace of the requested multiplicity.
    pub fn multiplicity(&self, r: Eigen) -> i64 {
        match r {
            Eigen::S => self.f_s,
            Eigen::T => self.f_t,
        }
    }
}

/// `1 + dr/k = (r+1)c/l`, checked as `lk + drl = (r+1)ck`.
pub fn check_eq1(params: &RankThreeParams, r: Eigen, cd: CdPair) -> bool {
    let (k, l) = (params.k as i128, params.l as i128);
    let rr = params.eigenvalue(r) as i128;
    let (c, d) = (cd.c as i128, cd.d as i128);
    l * k + d * rr * l == (rr + 1) * c * k
}

/// Whether `(xi, r)` falls in the linear case (`c − 2d = ξ3^m − 1`).
pub fn is_linear_case(xi: Sign, r: Eigen) -> bool {
    matches!((xi, r), (Sign::Plus, Eigen::S) | (Sign::Minus, Eigen::T))
}

/// `c − 2d = ξ3^m − 1`.
pub fn eq2_holds(m: u32, cd: CdPair) -> bool {
    let x = cd.xi.as_i64() as i128;
    cd.c as i128 - 2 * cd.d as i128 == x * pow3(m) - 1
}

/// `(ξ3^{m−1} + 1)(ξ3^m − 1 + c − 2d) = 2c`.
pub fn eq3_holds(m: u32, cd: CdPair) -> bool {
    let x = cd.xi.as_i64() as i128;
    let (c, d) = (cd.c as i128, cd.d as i128);
    (x * pow3(m - 1) + 1) * (x * pow3(m) - 1 + c - 2 * d) == 2 * c
}

/// The specialised form of the orbit equation for `Ω_{2m+1}(3)`: the linear
/// equation for `(+,s)`/`(−,t)` and the quadratic one otherwise.
pub fn check_specialized(m: u32, r: Eigen, cd: CdPair) -> bool {
    if is_linear_case(cd.xi, r) {
        eq2_holds(m, cd)
    } else {
        eq3_holds(m, cd)
    }
}

/// Necessary size bound `2(1+c+d) ≥ 3^m + 1`.
pub fn eq4_holds(m: u32, cd: CdPair) -> bool {
    2 * cd.orbit_size() as i128 >= pow3(m) + 1
}

/// Smallest orbit size allowed by the bound, `⌈(3^m+1)/2⌉`.
pub fn eq4_threshold(m: u32) -> i64 {
    ((pow3(m) + 2) / 2) as i64
}

/// All equation verdicts for one orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqVerdicts {
    pub eq1_s: bool,
    pub eq1_t: bool,
    /// `c − 2d = ξ3^m − 1`, independent of `r`.
    pub eq2: bool,
    /// The quadratic form, independent of `r`.
    pub eq3: bool,
    pub eq4: bool,
}

impl EqVerdicts {
    pub fn compute(m: u32, cd: CdPair) -> Result<Self, ParamError> {
        let p = odd_orthogonal_params(m, cd.xi)?;
        Ok(EqVerdicts {
            eq1_s: check_eq1(&p, Eigen::S, cd),
            eq1_t: check_eq1(&p, Eigen::T, cd),
            eq2: eq2_holds(m, cd),
            eq3: eq3_holds(m, cd),
            eq4: eq4_holds(m, cd),
        })
    }
    pub fn eq1(&self, r: Eigen) -> bool {
        match r {
            Eigen::S => self.eq1_s,
            Eigen::T => self.eq1_t,
        }
    }
}

/// Result of checking the strongly-regular-graph identities on an explicit point set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrgReport {
    pub points: usize,
    pub k: i64,
    pub l: i64,
    pub lambda: i64,
    pub mu: i64,
    pub s: i64,
    pub t: i64,
    pub f_s: i64,
    pub f_t: i64,
    /// `A² = kI + λA + μ(J−I−A)` and `AJ = kJ` on every entry.
    pub identity_holds: bool,
    /// First entry `(x, y)` where an identity failed.
    pub offending: Option<(usize, usize)>,
}

/// Builds the perpendicularity graph on `𝔈_ξ` and measures its parameters.
pub fn srg_verify(space: &QuadraticSpace, xi: Sign) -> Result<SrgReport, GeometryError> {
    let f = space.field();
    let pts = space.nonsingular_points(xi)?;
    let n = pts.len();
    let words = n.div_ceil(64);
    let polars: Vec<Vec<u32>> = pts.iter().map(|p| space.polar(p.coords())).collect();
    let mut adj = vec![0u64; n * words];
    for i in 0..n {
        for j in 0..n {
            if i != j && dot(&polars[i], pts[j].coords(), f) == 0 {
                adj[i * words + j / 64] |= 1 << (j % 64);
            }
        }
    }
    let row = |i: usize| &adj[i * words..(i + 1) * words];
    let deg = |i: usize| row(i).iter().map(|w| w.count_ones() as i64).sum::<i64>();
    let k = if n == 0 { 0 } else { deg(0) };
    let mut lambda = None;
    let mut mu = None;
    let mut offending = None;
    'outer: for i in 0..n {
        if deg(i) != k {
            offending = Some((i, i));
            break;
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            let common: i64 = row(i).iter().zip(row(j)).map(|(a, b)| (a & b).count_ones() as i64).sum();
            let adjacent = row(i)[j / 64] >> (j % 64) & 1 == 1;
            let slot = if adjacent { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(common),
                Some(v) if v == common => {}
                Some(_) => {
                    offending = Some((i, j));
                    break 'outer;
                }
            }
        }
    }
    let (lambda, mu) = (lambda.unwrap_or(0), mu.unwrap_or(0));
    let l = n as i64 - 1 - k;
    // Eigenvalues from the quadratic x² − (λ−μ)x − (k−μ) = 0, multiplicities from
    // the trace equations 0 = k + f_s·s + f_t·t and 1 + f_s + f_t = n.
    let disc = ((lambda - mu).pow(2) + 4 * (k - mu)) as i128;
    let (mut s, mut t, mut f_s, mut f_t) = (0, 0, 0, 0);
    let mut ok = offending.is_none();
    match exact_sqrt(disc) {
        Some(sd) if (lambda as i128 - mu as i128 + sd) % 2 == 0 && sd != 0 => {
            s = ((lambda as i128 - mu as i128 + sd) / 2) as i64;
            t = ((lambda as i128 - mu as i128 - sd) / 2) as i64;
            let rest = n as i128 - 1;
            // f_s·s + (rest − f_s)·t = −k  ⇒  f_s = (−k − rest·t)/(s − t)
            let num = -(k as i128) - rest * t as i128;
            match exact_div(num, (s - t) as i128) {
                Some(fs) => {
                    f_s = fs as i64;
                    f_t = (rest - fs) as i64;
                }
                None => ok = false,
            }
        }
        _ => ok = false,
    }
    Ok(SrgReport { points: n, k, l, lambda, mu, s, t, f_s, f_t, identity_holds: ok, offending })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_sqrt_small() {
        assert_eq!(exact_sqrt(0), Some(0));
        assert_eq!(exact_sqrt(36), Some(6));
        assert_eq!(exact_sqrt(35), None);
        assert_eq!(exact_sqrt(-4), None);
    }

    #[test]
    fn generic_examples() {
        let p = generic_params(12, 32, 3, 3).unwrap();
        assert_eq!((p.sqrt_d, p.s, p.t, p.f_s, p.f_t), (6, 3, -3, 20, 24));
        let p = generic_params(117, 260, 36, 36).unwrap();
        assert_eq!((p.s, p.t, p.f_s, p.f_t), (9, -9, 182, 195));
    }

    #[test]
    fn non_square_discriminant_rejected() {
        // D = 0 + 4·(3−1) = 8
        assert!(matches!(generic_params(3, 4, 1, 1), Err(ParamError::NotRank3(_))));
    }

    #[test]
    fn m_below_two_rejected() {
        assert_eq!(odd_orthogonal_params(1, Sign::Plus), Err(ParamError::BadM { m: 1, min: 2 }));
    }

    #[test]
    fn eq4_threshold_values() {
        assert_eq!(eq4_threshold(7), 1094);
        assert_eq!(eq4_threshold(12), 265721);
        assert_eq!(eq4_threshold(4), 41);
    }
}
