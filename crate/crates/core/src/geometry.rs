//! Quadratic spaces over GF(q), q odd: evaluation, perpendicularity, signs,
//! the type function, point sets of a given type, and norm counting with
//! both exhaustive and closed-form answers.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::GeometryError;
use crate::field::{Elem, FiniteField, SquareClass};
use crate::linalg::{dot, normalize_projective, vec_mat, Mat};

/// Exhaustive enumeration is allowed up to this many vectors (3^16).
pub const EXHAUSTIVE_LIMIT: u64 = 43_046_721;
/// Largest dimension for exhaustive sign counting.
pub const EXHAUSTIVE_MAX_DIM: usize = 16;
/// Largest dimension for which point sets are materialised.
pub const POINT_SET_MAX_DIM: usize = 14;

/// Witt sign of an even-dimensional non-degenerate space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
    pub fn from_i64(x: i64) -> Sign {
        if x >= 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
    pub fn parse(s: &str) -> Option<Sign> {
        match s {
            "+" | "plus" | "+1" | "1" => Some(Sign::Plus),
            "-" | "minus" | "-1" | "−" => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Value of the type function on a nonzero vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PointType {
    /// Singular: `Q(v) = 0`.
    Zero,
    Plus,
    Minus,
    /// Even dimension: the type is the value `Q(v)` itself.
    Value(Elem),
}

impl PointType {
    pub fn from_sign(s: Sign) -> PointType {
        match s {
            Sign::Plus => PointType::Plus,
            Sign::Minus => PointType::Minus,
        }
    }
    pub fn sign(self) -> Option<Sign> {
        match self {
            PointType::Plus => Some(Sign::Plus),
            PointType::Minus => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for PointType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointType::Zero => f.write_str("0"),
            PointType::Plus => f.write_str("+"),
            PointType::Minus => f.write_str("-"),
            PointType::Value(v) => write!(f, "{v}"),
        }
    }
}

/// A 1-space, stored by its representative with leading coordinate 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProjectivePoint(Vec<Elem>);

impl ProjectivePoint {
    pub fn new(mut v: Vec<Elem>, f: &FiniteField) -> Result<Self, GeometryError> {
        if v.iter().all(|&x| x == 0) {
            return Err(GeometryError::ZeroVector);
        }
        normalize_projective(&mut v, f);
        Ok(ProjectivePoint(v))
    }
    pub fn coords(&self) -> &[Elem] {
        &self.0
    }
    pub fn into_coords(self) -> Vec<Elem> {
        self.0
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(">")
    }
}

/// `(V, F_q, Q)` with `Q(v) = 2⁻¹·f(v,v)` and `f` given by a symmetric Gram matrix.
#[derive(Clone, Debug)]
pub struct QuadraticSpace {
    field: FiniteField,
    gram: Mat,
    half: Elem,
    det: Elem,
}

impl PartialEq for QuadraticSpace {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.gram == other.gram
    }
}

fn qpow(q: u64, e: u32) -> u64 {
    q.pow(e)
}

impl QuadraticSpace {
    pub fn new(field: FiniteField, gram: Mat) -> Result<Self, GeometryError> {
        if field.characteristic() == 2 {
            return Err(GeometryError::EvenCharacteristic);
        }
        if !gram.is_square() {
            return Err(GeometryError::Shape { dim: gram.rows() });
        }
        if !gram.is_symmetric() {
            return Err(GeometryError::NotSymmetric);
        }
        let det = if gram.rows() == 0 { 1 } else { gram.det(&field) };
        if det == 0 {
            return Err(GeometryError::Degenerate);
        }
        let half = field.half();
        Ok(QuadraticSpace { field, gram, half, det })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.gram.rows()
    }
    pub fn gram(&self) -> &Mat {
        &self.gram
    }
    /// Determinant of the Gram matrix.
    pub fn det(&self) -> Elem {
        self.det
    }
    /// Discriminant class, the square class of `det`.
    pub fn discriminant(&self) -> SquareClass {
        self.field.square_class(self.det).expect("non-degenerate")
    }

    fn check_len(&self, v: &[Elem]) -> Result<(), GeometryError> {
        if v.len() != self.dim() {
            return Err(GeometryError::Length { dim: self.dim(), got: v.len() });
        }
        Ok(())
    }

    /// `f(u, v) = u·G·vᵀ`.
    pub fn bilinear(&self, u: &[Elem], v: &[Elem]) -> Elem {
        dot(&vec_mat(u, &self.gram, &self.field), v, &self.field)
    }
    /// `Q(v) = 2⁻¹·f(v, v)`.
    pub fn q(&self, v: &[Elem]) -> Elem {
        self.field.mul(self.half, self.bilinear(v, v))
    }
    /// The linear functional `x ↦ f(x, v)` as a vector (`G·vᵀ`, i.e. `v·G`).
    pub fn polar(&self, v: &[Elem]) -> Vec<Elem> {
        vec_mat(v, &self.gram, &self.field)
    }

    /// Basis (rows) of `{x : f(x, vᵢ) = 0 for all i}`.
    pub fn perp(&self, vectors: &[Vec<Elem>]) -> Mat {
        let n = self.dim();
        let mut cols = Mat::zeros(n, vectors.len());
        for (j, v) in vectors.iter().enumerate() {
            for (i, x) in self.polar(v).into_iter().enumerate() {
                cols.set(i, j, x);
            }
        }
        cols.left_kernel(&self.field)
    }

    /// Gram matrix of the restriction to the row span of `basis`.
    pub fn restricted_gram(&self, basis: &Mat) -> Mat {
        basis.mul(&self.gram, &self.field).mul(&basis.transpose(), &self.field)
    }

    /// Restriction to a non-degenerate subspace.
    pub fn restrict(&self, basis: &Mat) -> Result<QuadraticSpace, GeometryError> {
        QuadraticSpace::new(self.field.clone(), self.restricted_gram(basis))
    }

    /// Same space with the form multiplied by `c ≠ 0`.
    pub fn scaled(&self, c: Elem) -> Result<QuadraticSpace, GeometryError> {
        QuadraticSpace::new(self.field.clone(), self.gram.scale(c, &self.field))
    }

    /// An orthogonal basis (rows), built by splitting off one non-singular
    /// vector at a time.
    pub fn orthogonal_basis(&self) -> Mat {
        let f = &self.field;
        let n = self.dim();
        let mut out = Mat::empty(n);
        let mut sub = Mat::identity(n);
        while sub.rows() > 0 {
            let rows = sub.to_rows();
            let v = rows
                .iter()
                .find(|r| self.q(r) != 0)
                .cloned()
                .or_else(|| {
                    // Every basis vector is singular; some pair sum is not.
                    (0..rows.len()).find_map(|a| {
                        (a + 1..rows.len()).find_map(|b| {
                            let s: Vec<Elem> = rows[a].iter().zip(&rows[b]).map(|(&x, &y)| f.add(x, y)).collect();
                            (self.q(&s) != 0).then_some(s)
                        })
                    })
                })
                .expect("non-degenerate subspace has a non-singular vector");
            out.push_row(&v);
            // {s ∈ span(sub) : f(s, v) = 0}
            let pol = self.polar(&v);
            let mut col = Mat::zeros(sub.rows(), 1);
            for (i, r) in rows.iter().enumerate() {
                col.set(i, 0, dot(r, &pol, f));
            }
            sub = col.left_kernel(f).mul(&sub, f);
        }
        out
    }

    /// Sign from the discriminant: for dimension `2k`, `+` iff `(−1)^k·det` is a square.
    pub fn sign_by_discriminant(&self) -> Result<Sign, GeometryError> {
        let n = self.dim();
        if n % 2 == 1 {
            return Err(GeometryError::Parity("even"));
        }
        let f = &self.field;
        let k = n / 2;
        let x = if k % 2 == 0 { self.det } else { f.neg(self.det) };
        Ok(match f.square_class(x)? {
            SquareClass::Square => Sign::Plus,
            SquareClass::NonSquare => Sign::Minus,
        })
    }

    /// Number of vectors `v` (zero included) with `Q(v) = 0`, by enumeration.
    pub fn count_singular_exhaustive(&self) -> Result<u64, GeometryError> {
        Ok(self.norm_histogram()?[0])
    }

    /// Sign of an even-dimensional space. Counts singular vectors when the
    /// space is small enough and cross-checks the discriminant rule; larger
    /// spaces use the discriminant rule alone.
    pub fn sign_of_space(&self) -> Result<Sign, GeometryError> {
        let rule = self.sign_by_discriminant()?;
        if !self.exhaustive_ok() {
            return Ok(rule);
        }
        let n = self.dim() as u32;
        if n == 0 {
            return Ok(Sign::Plus);
        }
        let q = self.field.order() as u64;
        let k = n / 2;
        let count = self.count_singular_exhaustive()?;
        let base = qpow(q, n - 1);
        let delta = qpow(q, k) - qpow(q, k - 1);
        let counted = if count == base + delta {
            Sign::Plus
        } else if count + delta == base {
            Sign::Minus
        } else {
            // Neither closed form matches: the Gram matrix is wrong somehow.
            return Err(GeometryError::SignMismatch { counted: Sign::Plus, rule });
        };
        if counted != rule {
            return Err(GeometryError::SignMismatch { counted, rule });
        }
        Ok(counted)
    }

    fn exhaustive_ok(&self) -> bool {
        let q = self.field.order() as u64;
        self.dim() <= EXHAUSTIVE_MAX_DIM && q.checked_pow(self.dim() as u32).is_some_and(|t| t <= EXHAUSTIVE_LIMIT)
    }

    /// Type of a vector with `Q(v) = gamma ≠ 0` in odd dimension, from the
    /// discriminant: `+` iff `(−1)^m·det·2γ` is a square (dimension `2m+1`).
    pub fn type_for_norm(&self, gamma: Elem) -> Result<PointType, GeometryError> {
        let n = self.dim();
        if n % 2 == 0 {
            return Ok(if gamma == 0 { PointType::Zero } else { PointType::Value(gamma) });
        }
        if gamma == 0 {
            return Ok(PointType::Zero);
        }
        let f = &self.field;
        let m = n / 2;
        let mut x = f.mul(self.det, f.mul(f.from_int(2), gamma));
        if m % 2 == 1 {
            x = f.neg(x);
        }
        Ok(match f.square_class(x)? {
            SquareClass::Square => PointType::Plus,
            SquareClass::NonSquare => PointType::Minus,
        })
    }

    /// The type function: `Zero` for singular vectors; in odd dimension the
    /// sign of `v^⊥`; in even dimension the value `Q(v)`.
    pub fn point_type(&self, v: &[Elem]) -> Result<PointType, GeometryError> {
        self.check_len(v)?;
        if v.iter().all(|&x| x == 0) {
            return Err(GeometryError::ZeroVector);
        }
        let gamma = self.q(v);
        if gamma == 0 {
            return Ok(PointType::Zero);
        }
        if self.dim() % 2 == 0 {
            return Ok(PointType::Value(gamma));
        }
        let perp = self.restrict(&self.perp(&[v.to_vec()]))?;
        Ok(PointType::from_sign(perp.sign_of_space()?))
    }

    /// Histogram of `Q` over every vector: `hist[γ] = #{v : Q(v) = γ}`.
    pub fn norm_histogram(&self) -> Result<Vec<u64>, GeometryError> {
        if !self.exhaustive_ok() {
            return Err(GeometryError::TooLarge { dim: self.dim(), what: "exhaustive counting" });
        }
        let f = &self.field;
        let n = self.dim();
        let q = f.order();
        let mut hist = vec![0u64; q as usize];
        let mut v = vec![0 as Elem; n];
        let mut lin = vec![0 as Elem; n]; // v·G
        let mut qv: Elem = 0;
        let qdiag: Vec<Elem> = (0..n).map(|i| f.mul(self.half, self.gram.get(i, i))).collect();
        loop {
            hist[qv as usize] += 1;
            // Odometer step; each coordinate change updates Q and v·G incrementally.
            let mut k = 0;
            loop {
                if k == n {
                    return Ok(hist);
                }
                let old = v[k];
                let new = if old + 1 == q { 0 } else { old + 1 };
                let delta = f.sub(new, old);
                // Q(v + δe_k) = Q(v) + δ·f(v, e_k) + δ²·Q(e_k)
                qv = f.add(qv, f.add(f.mul(delta, lin[k]), f.mul(f.mul(delta, delta), qdiag[k])));
                let row = self.gram.row(k);
                for (l, &g) in lin.iter_mut().zip(row) {
                    if g != 0 {
                        *l = f.add(*l, f.mul(delta, g));
                    }
                }
                v[k] = new;
                if new != 0 {
                    break;
                }
                k += 1;
            }
        }
    }

    /// Count of vectors with `Q(v) = γ`, exhaustive where feasible plus the closed form.
    pub fn count_norm_vectors(&self, gamma: Elem, include_zero: bool) -> Result<NormCount, GeometryError> {
        let closed = self.closed_form_count(gamma, include_zero)?;
        let exhaustive = if self.exhaustive_ok() {
            let mut c = self.norm_histogram()?[gamma as usize];
            if gamma == 0 && !include_zero {
                c -= 1;
            }
            Some(c)
        } else {
            None
        };
        Ok(NormCount { gamma, exhaustive, closed_form: closed, closed_form_only: exhaustive.is_none() })
    }

    /// Closed-form number of vectors with `Q(v) = γ`.
    pub fn closed_form_count(&self, gamma: Elem, include_zero: bool) -> Result<u64, GeometryError> {
        let q = self.field.order() as u64;
        let n = self.dim() as u32;
        let raw: i128 = if n % 2 == 1 {
            let k = n / 2;
            let top = qpow(q, 2 * k) as i128;
            if gamma == 0 {
                top
            } else {
                let rho = match self.type_for_norm(gamma)? {
                    PointType::Plus => 1,
                    _ => -1,
                };
                top + rho * qpow(q, k) as i128
            }
        } else {
            let k = n / 2;
            let eps = self.sign_by_discriminant()?.as_i64() as i128;
            let top = qpow(q, 2 * k - 1) as i128;
            if gamma == 0 {
                top + eps * (qpow(q, k) as i128 - qpow(q, k - 1) as i128)
            } else {
                top - eps * qpow(q, k - 1) as i128
            }
        };
        let adj = if gamma == 0 && !include_zero { raw - 1 } else { raw };
        Ok(adj as u64)
    }

    /// Non-singular projective points of type `xi` (odd dimension only).
    pub fn nonsingular_points(&self, xi: Sign) -> Result<Vec<ProjectivePoint>, GeometryError> {
        let n = self.dim();
        if n % 2 == 0 {
            return Err(GeometryError::Parity("odd"));
        }
        if n > POINT_SET_MAX_DIM || !self.exhaustive_ok() {
            return Err(GeometryError::TooLarge { dim: n, what: "point-set enumeration" });
        }
        let f = &self.field;
        let want = PointType::from_sign(xi);
        // Precompute which norm values carry type `xi`.
        let norm_ok: Vec<bool> =
            f.elements().map(|g| g != 0 && self.type_for_norm(g).map(|t| t == want).unwrap_or(false)).collect();
        let mut out = Vec::new();
        for v in canonical_vectors(n, f) {
            if norm_ok[self.q(&v) as usize] {
                out.push(ProjectivePoint(v));
            }
        }
        Ok(out)
    }
}

/// Every vector whose first nonzero coordinate is 1, in base-q order with
/// coordinate 0 least significant.
pub fn canonical_vectors(n: usize, f: &FiniteField) -> impl Iterator<Item = Vec<Elem>> + '_ {
    let q = f.order() as u64;
    let total = q.pow(n as u32);
    (1..total).filter_map(move |mut idx| {
        let mut v = Vec::with_capacity(n);
        for _ in 0..n {
            v.push((idx % q) as Elem);
            idx /= q;
        }
        (v.iter().find(|&&x| x != 0) == Some(&1)).then_some(v)
    })
}

/// Result of [`QuadraticSpace::count_norm_vectors`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormCount {
    pub gamma: Elem,
    pub exhaustive: Option<u64>,
    pub closed_form: u64,
    /// Set when the space is too large to enumerate.
    pub closed_form_only: bool,
}

impl NormCount {
    pub fn agrees(&self) -> bool {
        self.exhaustive.is_none_or(|e| e == self.closed_form)
    }
}

/// Diagonal space `λ·I_n` with `λ` chosen so that the discriminant has class `disc`.
/// In even dimension `λ^n` is always a square, so a non-square discriminant is
/// realised as `diag(1, …, 1, ν)` instead.
pub fn standard_space(n: usize, field: &FiniteField, disc: SquareClass) -> Result<QuadraticSpace, GeometryError> {
    let nu = field.nonsquare();
    let gram = match disc {
        SquareClass::Square => Mat::identity(n),
        SquareClass::NonSquare if n % 2 == 1 => Mat::scalar(n, nu),
        SquareClass::NonSquare => {
            let mut d = vec![1; n];
            if let Some(last) = d.last_mut() {
                *last = nu;
            }
            Mat::diagonal(&d)
        }
    };
    QuadraticSpace::new(field.clone(), gram)
}

/// Hyperbolic plane `[[0,1],[1,0]]`.
pub fn hyperbolic_plane(field: &FiniteField) -> QuadraticSpace {
    QuadraticSpace::new(field.clone(), Mat::from_rows(&[vec![0, 1], vec![1, 0]])).expect("non-degenerate")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf3() -> FiniteField {
        FiniteField::gf3()
    }

    #[test]
    fn standard_spaces() {
        let f = gf3();
        let s = standard_space(7, &f, SquareClass::Square).unwrap();
        assert!(s.gram().is_identity());
        assert_eq!(s.discriminant(), SquareClass::Square);
        let t = standard_space(5, &f, SquareClass::NonSquare).unwrap();
        assert_eq!(t.discriminant(), SquareClass::NonSquare);
        let u = standard_space(4, &f, SquareClass::NonSquare).unwrap();
        assert_eq!(u.discriminant(), SquareClass::NonSquare);
    }

    #[test]
    fn zero_vector_is_rejected() {
        let s = standard_space(3, &gf3(), SquareClass::Square).unwrap();
        assert_eq!(s.point_type(&[0, 0, 0]), Err(GeometryError::ZeroVector));
        assert!(matches!(s.point_type(&[1, 0]), Err(GeometryError::Length { .. })));
    }

    #[test]
    fn projective_point_canonical() {
        let f = gf3();
        let a = ProjectivePoint::new(vec![0, 2, 1], &f).unwrap();
        let b = ProjectivePoint::new(vec![0, 1, 2], &f).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "<0 1 2>");
    }

    #[test]
    fn polarization_identity() {
        let f = FiniteField::new(3, 2).unwrap();
        let gram = Mat::from_rows(&[vec![1, 3, 0], vec![3, 2, 1], vec![0, 1, 5]]);
        let s = QuadraticSpace::new(f.clone(), gram).unwrap();
        for (u, v) in [([1u32, 2, 3], [4u32, 5, 6]), ([8, 0, 1], [2, 7, 7])] {
            let sum: Vec<u32> = u.iter().zip(&v).map(|(&a, &b)| f.add(a, b)).collect();
            let pol = f.sub(f.sub(s.q(&sum), s.q(&u)), s.q(&v));
            assert_eq!(pol, s.bilinear(&u, &v));
        }
    }

    #[test]
    fn even_dim_type_is_the_norm() {
        let s = hyperbolic_plane(&gf3());
        assert_eq!(s.point_type(&[1, 1]).unwrap(), PointType::Value(1));
        assert_eq!(s.point_type(&[1, 0]).unwrap(), PointType::Zero);
    }
}
