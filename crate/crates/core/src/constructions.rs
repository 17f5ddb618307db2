//! Explicit subgroups and modules: wreath stabilisers of orthonormal frames,
//! parabolic stabilisers, the field-extension subgroup in dimension 9, fully
//! deleted permutation modules, wedge and symmetric squares with their
//! radical quotients, the symplectic `λ₂` module, tensor products and the
//! small bound cases. Every builder returns a [`ConstructedCase`] whose group
//! has been checked to preserve the form.

use serde::{Deserialize, Serialize};

use crate::error::{ConstructionError, GroupError};
use crate::field::{Elem, FiniteField, SquareClass};
use crate::geometry::{canonical_vectors, standard_space, QuadraticSpace, Sign};
use crate::groups::{omega_generators, reflection, MatrixGroup};
use crate::linalg::{vec_mat, EchelonBasis, Mat};
use crate::orbit::base_type;

/// A named base point with the type it is expected to have.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasePoint {
    pub name: String,
    pub vector: Vec<Elem>,
    /// `None` when the space has even dimension.
    pub expected: Option<Sign>,
}

/// A quadratic space, a form-preserving group and pinned base points.
#[derive(Clone, Debug)]
pub struct ConstructedCase {
    pub label: String,
    pub space: QuadraticSpace,
    pub group: MatrixGroup,
    pub base_points: Vec<BasePoint>,
    /// Short description of where the case comes from.
    pub citation: String,
}

impl ConstructedCase {
    /// Checks form preservation and base-point types.
    pub fn validate(&self) -> Result<(), ConstructionError> {
        if self.group.dim() != self.space.dim() {
            return Err(GroupError::Dimension { group: self.group.dim(), got: self.space.dim() }.into());
        }
        for (i, g) in self.group.gens().iter().enumerate() {
            if !crate::groups::is_isometry(&self.space, g) {
                return Err(ConstructionError::SelfCheck(format!(
                    "{}: generator {i} does not preserve the form",
                    self.label
                )));
            }
        }
        for b in &self.base_points {
            let t = base_type(&self.space, &b.vector)?;
            if b.expected.is_some() && t != b.expected {
                return Err(ConstructionError::SelfCheck(format!(
                    "{}: base point {} has type {:?}, expected {:?}",
                    self.label, b.name, t, b.expected
                )));
            }
        }
        Ok(())
    }

    pub fn base(&self, name: &str) -> Option<&BasePoint> {
        self.base_points.iter().find(|b| b.name == name)
    }

    fn finish(self) -> Result<Self, ConstructionError> {
        self.validate()?;
        Ok(self)
    }
}

fn unit(n: usize, i: usize) -> Vec<Elem> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn base(name: &str, vector: Vec<Elem>, space: &QuadraticSpace) -> Result<BasePoint, ConstructionError> {
    let expected = base_type(space, &vector)?;
    Ok(BasePoint { name: name.into(), vector, expected })
}

fn pinned(name: &str, vector: Vec<Elem>, expected: Sign) -> BasePoint {
    BasePoint { name: name.into(), vector, expected: Some(expected) }
}

fn gf3() -> FiniteField {
    FiniteField::gf3()
}

/// `Ω_n(3)` on the orthonormal space `I_n`.
pub fn natural_omega(n: usize) -> Result<ConstructedCase, ConstructionError> {
    if !(3..=15).contains(&n) {
        return Err(ConstructionError::Range(format!("natural module needs 3 ≤ n ≤ 15, got {n}")));
    }
    let space = standard_space(n, &gf3(), SquareClass::Square)?;
    let group = omega_generators(&space)?;
    let mut base_points = vec![base("x1", unit(n, 0), &space)?];
    let mut v = unit(n, 0);
    v[1] = 1;
    base_points.push(base("x1+x2", v, &space)?);
    ConstructedCase {
        label: format!("omega-n{n}"),
        space,
        group,
        base_points,
        citation: "natural orthogonal module".into(),
    }
    .finish()
}

/// `Ω ∩ (O₁(3) ≀ S_n)` on `I_n`: even sign changes and `A_n`.
///
/// Generators are `r_i·r_{i+1}` and the 3-cycles `r_{x₁−x₂}·r_{x₁−x_k}`.
pub fn wreath_o1_subgroup(n: usize) -> Result<ConstructedCase, ConstructionError> {
    if n % 2 == 0 || !(5..=13).contains(&n) {
        return Err(ConstructionError::Range(format!("wreath case needs odd 5 ≤ n ≤ 13, got {n}")));
    }
    let f = gf3();
    let space = standard_space(n, &f, SquareClass::Square)?;
    let mut gens = Vec::new();
    for i in 0..n - 1 {
        let a = reflection(&space, &unit(n, i))?;
        let b = reflection(&space, &unit(n, i + 1))?;
        gens.push(a.mul(&b, &f));
    }
    let mut d12 = unit(n, 0);
    d12[1] = 2;
    let r12 = reflection(&space, &d12)?;
    for k in 2..n {
        let mut d = unit(n, 0);
        d[k] = 2;
        gens.push(r12.mul(&reflection(&space, &d)?, &f));
    }
    let group = MatrixGroup::new(f, n, gens)?.with_label(format!("O1 wr S{n} ∩ Ω"));
    let mut x12 = unit(n, 0);
    x12[1] = 1;
    let base_points = vec![base("x1", unit(n, 0), &space)?, base("x1+x2", x12, &space)?];
    ConstructedCase {
        label: format!("wreath-n{n}"),
        space,
        group,
        base_points,
        citation: "stabiliser of an orthonormal frame".into(),
    }
    .finish()
}

/// Stabiliser in `Ω_n(3)` of a totally singular `α`-space.
///
/// Basis `e₁…e_α, x₁…x_s, f₁…f_α` with Gram `[[0,0,I],[0,I_s,0],[I,0,0]]`;
/// generators are unipotent `[[I,0,0],[B,I,0],[A,C,I]]` matrices for
/// elementary `B` (with `C = −Bᵗ`, `A = −½·BᵗB`) and skew `A`, the Levi
/// blocks `diag(D, I, D^{−ᵗ})` for elementary `D ∈ SL_α(3)`, and `Ω(X)`.
pub fn parabolic_subgroup(n: usize, alpha: usize) -> Result<ConstructedCase, ConstructionError> {
    if n % 2 == 0 || n < 5 {
        return Err(ConstructionError::Range(format!("parabolic case needs odd n ≥ 5, got {n}")));
    }
    let m = n / 2;
    if alpha < 1 || alpha > m {
        return Err(ConstructionError::Range(format!("α must satisfy 1 ≤ α ≤ {m}, got {alpha}")));
    }
    let f = gf3();
    let s = n - 2 * alpha;
    let (e, x, ff) = (0usize, alpha, alpha + s); // block offsets
    let mut gram = Mat::zeros(n, n);
    for i in 0..alpha {
        gram.set(e + i, ff + i, 1);
        gram.set(ff + i, e + i, 1);
    }
    for j in 0..s {
        gram.set(x + j, x + j, 1);
    }
    let space = QuadraticSpace::new(f.clone(), gram)?;
    let half = f.half();
    let mut gens = Vec::new();
    // B = E_{j,i}: x_j ↦ x_j + e_i, f_i ↦ f_i − x_j − ½e_i
    for j in 0..s {
        for i in 0..alpha {
            let mut u = Mat::identity(n);
            u.set(x + j, e + i, 1);
            u.set(ff + i, x + j, f.neg(1));
            u.set(ff + i, e + i, f.neg(half));
            gens.push(u);
        }
    }
    // A = E_{ij} − E_{ji}: f_i ↦ f_i + e_j, f_j ↦ f_j − e_i
    for i in 0..alpha {
        for j in i + 1..alpha {
            let mut u = Mat::identity(n);
            u.set(ff + i, e + j, 1);
            u.set(ff + j, e + i, f.neg(1));
            gens.push(u);
        }
    }
    // Levi: D = I + E_{ij}, D^{−ᵗ} = I − E_{ji}
    for i in 0..alpha {
        for j in 0..alpha {
            if i != j {
                let mut g = Mat::identity(n);
                g.set(e + i, e + j, 1);
                g.set(ff + j, ff + i, f.neg(1));
                gens.push(g);
            }
        }
    }
    let xspace = standard_space(s, &f, SquareClass::Square)?;
    if s >= 3 {
        for h in omega_generators(&xspace)?.gens() {
            let mut g = Mat::identity(n);
            for a in 0..s {
                for b in 0..s {
                    g.set(x + a, x + b, h.get(a, b));
                }
            }
            gens.push(g);
        }
    }
    let group = MatrixGroup::new(f.clone(), n, gens)?.with_label(format!("P_{alpha} in Omega_{n}(3)"));
    let mut base_points = Vec::new();
    for xi in [Sign::Plus, Sign::Minus] {
        let found = canonical_vectors(s, &f).find_map(|c| {
            let mut v = vec![0; n];
            v[x..x + s].copy_from_slice(&c);
            let g = space.q(&v);
            (g != 0 && base_type(&space, &v).ok().flatten() == Some(xi)).then_some((v, g))
        });
        if let Some((v, eta)) = found {
            let tag = if xi == Sign::Plus { "plus" } else { "minus" };
            let mut z = vec![0; n];
            z[e] = eta;
            z[ff] = 1;
            base_points.push(pinned(&format!("x-{tag}"), v, xi));
            base_points.push(pinned(&format!("z-{tag}"), z, xi));
        }
    }
    ConstructedCase {
        label: format!("parabolic-n{n}-a{alpha}"),
        space,
        group,
        base_points,
        citation: "stabiliser of a totally singular subspace".into(),
    }
    .finish()
}

/// Restriction of scalars from GF(27) to GF(3) through a normal basis.
#[derive(Clone, Debug)]
pub struct BlowDown {
    pub big: FiniteField,
    pub small: FiniteField,
    /// `ζ, ζ^p, ζ^{p²}, …`
    pub normal_basis: Vec<Elem>,
    inv: Mat,
}

impl BlowDown {
    /// Uses `ζ = x` (the root of the modulus) when it generates a normal
    /// basis, otherwise the first normal element in encoding order.
    pub fn new(big: FiniteField) -> Result<Self, ConstructionError> {
        let small = FiniteField::new(big.characteristic(), 1)?;
        let a = big.degree() as usize;
        let conj = |z: Elem| -> Vec<Elem> {
            let mut out = vec![z];
            for _ in 1..a {
                out.push(big.frobenius(*out.last().unwrap()));
            }
            out
        };
        let digit_mat = |zs: &[Elem]| Mat::from_rows(&zs.iter().map(|&z| big.digits(z)).collect::<Vec<_>>());
        let candidates = std::iter::once(big.generator_x()).chain(big.elements());
        for z in candidates {
            if z == 0 {
                continue;
            }
            let nb = conj(z);
            if let Some(inv) = digit_mat(&nb).inverse(&small) {
                return Ok(BlowDown { big, small, normal_basis: nb, inv });
            }
        }
        Err(ConstructionError::SelfCheck("no normal basis".into()))
    }

    pub fn degree(&self) -> usize {
        self.normal_basis.len()
    }

    /// Coordinates of a GF(q^a) element in the normal basis.
    pub fn coords(&self, z: Elem) -> Vec<Elem> {
        vec_mat(&self.big.digits(z), &self.inv, &self.small)
    }

    /// Coordinates of a vector over the big field (`a` per entry).
    pub fn vector(&self, v: &[Elem]) -> Vec<Elem> {
        v.iter().flat_map(|&z| self.coords(z)).collect()
    }

    /// Matrix of `w ↦ w·g` over the small field; row `a·i + k` is the image of `ζ_k·w_i`.
    pub fn matrix(&self, g: &Mat) -> Mat {
        let a = self.degree();
        let n = g.rows();
        let mut out = Mat::zeros(a * n, a * n);
        for i in 0..n {
            for k in 0..a {
                for j in 0..n {
                    let c = self.coords(self.big.mul(self.normal_basis[k], g.get(i, j)));
                    for (l, &v) in c.iter().enumerate() {
                        out.set(a * i + k, a * j + l, v);
                    }
                }
            }
        }
        out
    }

    /// Gram matrix of `T∘f` for a big-field Gram matrix `gram`.
    pub fn gram(&self, gram: &Mat) -> Mat {
        let a = self.degree();
        let n = gram.rows();
        let b = &self.big;
        let mut out = Mat::zeros(a * n, a * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..a {
                    for l in 0..a {
                        let z = b.mul(b.mul(self.normal_basis[k], self.normal_basis[l]), gram.get(i, j));
                        out.set(a * i + k, a * j + l, b.trace(z));
                    }
                }
            }
        }
        out
    }

    /// The semilinear Frobenius map on `GF(q^a)^n`: a cyclic shift inside every block.
    pub fn frobenius_matrix(&self, n: usize) -> Mat {
        let a = self.degree();
        let mut out = Mat::zeros(a * n, a * n);
        for i in 0..n {
            for k in 0..a {
                out.set(a * i + k, a * i + (k + 1) % a, 1);
            }
        }
        out
    }

    /// Square class of the discriminant of the trace form `(x, y) ↦ T(xy)`.
    pub fn trace_form_discriminant(&self) -> SquareClass {
        let g = self.gram(&Mat::identity(1));
        self.small.square_class(g.det(&self.small)).expect("trace form is non-degenerate")
    }
}

/// `Ω₃(27)⋊⟨φ⟩` blown down to `Ω₉(3)`.
///
/// The big space is `GF(27)³` with Gram `I₃`; the GF(3) form is `T∘f♯`.
/// Base points (as GF(27)-vectors in the basis `w₁, w₂, w₃`, `ω` the root of
/// `x³ − x + 1`): `ωw₁, ω²w₁, ω⁴(w₁+w₂)` have `Q = 1`, and
/// `ω(w₁+w₂), ω²(w₁+w₂), ω⁴w₁` have `Q = −1`.
pub fn field_extension_subgroup(n: usize) -> Result<ConstructedCase, ConstructionError> {
    if n != 9 {
        return Err(ConstructionError::Range(format!("field-extension case is built for n = 9 only, got {n}")));
    }
    let big = FiniteField::new(3, 3)?;
    let bd = BlowDown::new(big.clone())?;
    let big_space = QuadraticSpace::new(big.clone(), Mat::identity(3))?;
    let omega3 = omega_generators(&big_space)?;
    let space = QuadraticSpace::new(bd.small.clone(), bd.gram(&Mat::identity(3)))?;
    let mut gens: Vec<Mat> = omega3.gens().iter().map(|g| bd.matrix(g)).collect();
    gens.push(bd.frobenius_matrix(3));
    let group = MatrixGroup::new(bd.small.clone(), 9, gens)?.with_label("Omega_3(27).3");
    let w = big.generator_x();
    let p = |e: u64| big.pow(w, e);
    let mk = |a: Elem, b: Elem| bd.vector(&[a, b, 0]);
    let base_points = vec![
        pinned("x1", mk(p(1), 0), Sign::Minus),
        pinned("x2", mk(p(2), 0), Sign::Minus),
        pinned("x3", mk(p(4), p(4)), Sign::Minus),
        pinned("y1", mk(p(1), p(1)), Sign::Plus),
        pinned("y2", mk(p(2), p(2)), Sign::Plus),
        pinned("y3", mk(p(4), 0), Sign::Plus),
    ];
    ConstructedCase {
        label: "fieldext-n9".into(),
        space,
        group,
        base_points,
        citation: "extension-field subgroup over GF(27)".into(),
    }
    .finish()
}

/// An invariant subspace `S` with coordinates in a fixed basis, and a
/// radical `R ⊆ S` to quotient by.
#[derive(Clone, Debug)]
pub struct Subquotient {
    field: FiniteField,
    /// Basis rows of `S` in ambient coordinates.
    sub: Mat,
    pivots: Vec<usize>,
    pivot_inv: Mat,
    /// `R` in `S`-coordinates, fully reduced.
    rad: EchelonBasis,
    /// `S`-coordinates kept as the quotient basis.
    keep: Vec<usize>,
}

impl Subquotient {
    /// `sub`: basis rows of `S`; `rad`: rows (in ambient coordinates) spanning `R`.
    pub fn new(field: &FiniteField, sub: Mat, rad: &Mat) -> Result<Self, ConstructionError> {
        let (_, pivots) = sub.rref(field);
        if pivots.len() != sub.rows() {
            return Err(ConstructionError::SelfCheck("subspace basis is not independent".into()));
        }
        let all: Vec<usize> = (0..sub.rows()).collect();
        let pivot_inv = sub.submatrix(&all, &pivots).inverse(field).expect("pivot block is invertible");
        let mut sq =
            Subquotient { field: field.clone(), sub, pivots, pivot_inv, rad: EchelonBasis::new(0), keep: Vec::new() };
        let mut r = EchelonBasis::new(sq.sub.rows());
        for i in 0..rad.rows() {
            let c = sq.sub_coords(rad.row(i))?;
            r.insert(c, field);
        }
        sq.keep = r.non_pivots();
        sq.rad = r;
        Ok(sq)
    }

    /// Coordinates in the basis of `S`; errors if the vector is outside `S`.
    pub fn sub_coords(&self, v: &[Elem]) -> Result<Vec<Elem>, ConstructionError> {
        let f = &self.field;
        let vp: Vec<Elem> = self.pivots.iter().map(|&p| v[p]).collect();
        let c = vec_mat(&vp, &self.pivot_inv, f);
        if vec_mat(&c, &self.sub, f) != v {
            return Err(ConstructionError::SelfCheck("vector leaves the subspace".into()));
        }
        Ok(c)
    }

    /// Coordinates of the image in `S/R`.
    pub fn project(&self, v: &[Elem]) -> Result<Vec<Elem>, ConstructionError> {
        let mut c = self.sub_coords(v)?;
        self.rad.reduce(&mut c, &self.field);
        Ok(self.keep.iter().map(|&k| c[k]).collect())
    }

    pub fn dim(&self) -> usize {
        self.keep.len()
    }

    /// Ambient lifts of the quotient basis.
    pub fn lifts(&self) -> Mat {
        let mut m = Mat::empty(self.sub.cols());
        for &k in &self.keep {
            m.push_row(self.sub.row(k));
        }
        m
    }

    /// Induced action of an ambient matrix leaving `S` and `R` invariant.
    pub fn matrix(&self, g: &Mat) -> Result<Mat, ConstructionError> {
        let f = &self.field;
        let lifts = self.lifts();
        let mut out = Mat::zeros(self.dim(), self.dim());
        for i in 0..self.dim() {
            let img = self.project(&vec_mat(lifts.row(i), g, f))?;
            out.row_mut(i).copy_from_slice(&img);
        }
        Ok(out)
    }

    /// Induced Gram matrix (well defined when `R` is in the radical of `S`).
    pub fn gram(&self, gram: &Mat) -> Mat {
        let l = self.lifts();
        l.mul(gram, &self.field).mul(&l.transpose(), &self.field)
    }
}

/// Radical `S ∩ S^⊥` of the form restricted to the row space of `sub`, as ambient rows.
pub fn radical_of(field: &FiniteField, gram: &Mat, sub: &Mat) -> Mat {
    let g = sub.mul(gram, field).mul(&sub.transpose(), field);
    g.left_kernel(field).mul(sub, field)
}

/// `U/(U ∩ U^⊥)` for the sum-zero subspace `U` of the GF(3) permutation
/// module on `n` points, with the induced form and the induced action of
/// permutations given as image lists (`perm[i]` is the image of point `i`).
fn permutation_heart(
    n: usize,
    perms: &[Vec<usize>],
) -> Result<(Subquotient, QuadraticSpace, Vec<Mat>), ConstructionError> {
    let f = gf3();
    let rows: Vec<Vec<Elem>> = (0..n - 1)
        .map(|i| {
            let mut v = unit(n, i);
            v[i + 1] = 2;
            v
        })
        .collect();
    let sub = Mat::from_rows(&rows);
    let gram_n = Mat::identity(n);
    let rad = radical_of(&f, &gram_n, &sub);
    let sq = Subquotient::new(&f, sub, &rad)?;
    let mut gens = Vec::with_capacity(perms.len());
    for p in perms {
        let mut m = Mat::zeros(n, n);
        for (i, &j) in p.iter().enumerate() {
            m.set(i, j, 1);
        }
        gens.push(sq.matrix(&m)?);
    }
    let space = QuadraticSpace::new(f, sq.gram(&gram_n))?;
    Ok((sq, space, gens))
}

/// Fully deleted permutation module of `S_n` over GF(3).
///
/// `U` is spanned by `e_i = ε_i − ε_{i+1}`; when `3 | n` the all-ones vector
/// lies in `U` and is factored out. The group is generated by the images of
/// `(1 2)` and `(1 2 … n)`. Base points are the images of `v = ε₁ − ε₂` and
/// `w = ε₁ + ε₂ − ε₃ − ε₄`.
pub fn deleted_permutation_module(n: usize) -> Result<ConstructedCase, ConstructionError> {
    if !(5..=22).contains(&n) {
        return Err(ConstructionError::Range(format!("deleted module needs 5 ≤ n ≤ 22, got {n}")));
    }
    let swap: Vec<usize> = (0..n).map(|i| if i < 2 { 1 - i } else { i }).collect();
    let cyc: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let (sq, space, gens) = permutation_heart(n, &[swap, cyc])?;
    let f = gf3();
    let group = MatrixGroup::new(f, sq.dim(), gens)?.with_label(format!("S{n}"));
    let mut v = vec![0; n];
    v[0] = 1;
    v[1] = 2;
    let mut w = vec![0; n];
    w[0] = 1;
    w[1] = 1;
    w[2] = 2;
    w[3] = 2;
    let (pv, pw) = (sq.project(&v)?, sq.project(&w)?);
    if space.q(&pv) != 1 || space.q(&pw) != 2 {
        return Err(ConstructionError::SelfCheck("deleted-module base points have the wrong norms".into()));
    }
    let base_points = vec![base("v", pv, &space)?, base("w", pw, &space)?];
    ConstructedCase {
        label: format!("deleted-n{n}"),
        space,
        group,
        base_points,
        citation: "fully deleted permutation module of S_n".into(),
    }
    .finish()
}

/// `L₂(13)` on the 13-dimensional heart of its permutation module on the
/// projective line `{0, …, 12, ∞}` (3 ∤ 14, so the form stays non-degenerate).
///
/// Generators `x ↦ x + 1` and `x ↦ −1/x`. Base point `w` is the image of
/// `ε_∞ − Σ_{x≠∞} ε_x`, fixed by the translations; `u` is the first point in
/// canonical order of a regular orbit with `(c, d) = (734, 357)`.
pub fn psl2_13_heart() -> Result<ConstructedCase, ConstructionError> {
    const P: usize = 13;
    let inf = P;
    let inv = |x: usize| (1..P).find(|y| x * y % P == 1).expect("unit");
    let t: Vec<usize> = (0..=P).map(|x| if x == inf { inf } else { (x + 1) % P }).collect();
    let s: Vec<usize> = (0..=P)
        .map(|x| match x {
            _ if x == inf => 0,
            0 => inf,
            _ => (P - inv(x)) % P,
        })
        .collect();
    let (sq, space, gens) = permutation_heart(P + 1, &[t, s])?;
    let group = MatrixGroup::new(gf3(), sq.dim(), gens)?.with_label("L2(13)");
    let mut w = vec![2; P + 1];
    w[inf] = 1;
    let u = vec![1, 2, 1, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0];
    let base_points = vec![base("w", sq.project(&w)?, &space)?, pinned("u", u, Sign::Plus)];
    ConstructedCase {
        label: "l2-13-heart".into(),
        space,
        group,
        base_points,
        citation: "L2(13) on the heart of its permutation module on 14 points".into(),
    }
    .finish()
}

/// Closed forms `(orbit size, c, d)` for the two deleted-module base points, `n ≥ 10`.
pub fn deleted_module_closed_forms(n: i64, which: char) -> Result<(i64, i64, i64), ConstructionError> {
    if n < 10 {
        return Err(ConstructionError::Range(format!("closed forms need n ≥ 10, got {n}")));
    }
    match which {
        'v' => Ok((n * (n - 1) / 2, 2 * n - 4, (n - 2) * (n - 3) / 2)),
        'w' => {
            let orbit = n * (n - 1) * (n - 2) * (n - 3) / 8;
            let c = 2 * n.pow(3) - 25 * n * n + 111 * n - 172;
            let d = 2 + 4 * (n - 4).pow(2) + (n - 4) * (n - 5) * (n - 6) * (n - 7) / 8;
            Ok((orbit, c, d))
        }
        _ => Err(ConstructionError::Range(format!("base point must be v or w, got {which}"))),
    }
}

/// Index pairs `i < j` in lexicographic order.
pub fn wedge_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// Index pairs `i ≤ j` in lexicographic order (`s_ii = b_i⊗b_i`, `s_ij = b_i⊗b_j + b_j⊗b_i`).
pub fn sym_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

/// Gram matrix on `∧²N`: `(a∧b, c∧d) = (a,c)(b,d) − (a,d)(b,c)`.
pub fn wedge_gram(f: &FiniteField, g: &Mat) -> Mat {
    let pairs = wedge_pairs(g.rows());
    let mut out = Mat::zeros(pairs.len(), pairs.len());
    for (r, &(a, b)) in pairs.iter().enumerate() {
        for (c, &(cc, d)) in pairs.iter().enumerate() {
            let v = f.sub(f.mul(g.get(a, cc), g.get(b, d)), f.mul(g.get(a, d), g.get(b, cc)));
            out.set(r, c, v);
        }
    }
    out
}

/// `∧²g`: coefficient of `b_k∧b_l` in `(b_i∧b_j)g` is `g_ik·g_jl − g_il·g_jk`.
pub fn wedge_matrix(f: &FiniteField, g: &Mat) -> Mat {
    let pairs = wedge_pairs(g.rows());
    let mut out = Mat::zeros(pairs.len(), pairs.len());
    for (r, &(i, j)) in pairs.iter().enumerate() {
        for (c, &(k, l)) in pairs.iter().enumerate() {
            out.set(r, c, f.sub(f.mul(g.get(i, k), g.get(j, l)), f.mul(g.get(i, l), g.get(j, k))));
        }
    }
    out
}

/// Gram matrix on `S²N` induced from `(u₁⊗u₂, w₁⊗w₂) = (u₁,w₁)(u₂,w₂)`.
pub fn sym_gram(f: &FiniteField, g: &Mat) -> Mat {
    let pairs = sym_pairs(g.rows());
    let two = f.from_int(2);
    let mut out = Mat::zeros(pairs.len(), pairs.len());
    for (r, &(i, j)) in pairs.iter().enumerate() {
        for (c, &(k, l)) in pairs.iter().enumerate() {
            let v = match (i == j, k == l) {
                (true, true) => f.mul(g.get(i, k), g.get(i, k)),
                (true, false) => f.mul(two, f.mul(g.get(i, k), g.get(i, l))),
                (false, true) => f.mul(two, f.mul(g.get(k, i), g.get(k, j))),
                (false, false) => f.mul(two, f.add(f.mul(g.get(i, k), g.get(j, l)), f.mul(g.get(i, l), g.get(j, k)))),
            };
            out.set(r, c, v);
        }
    }
    out
}

/// `S²g` in the basis `s_ij`.
pub fn sym_matrix(f: &FiniteField, g: &Mat) -> Mat {
    let pairs = sym_pairs(g.rows());
    let two = f.from_int(2);
    let mut out = Mat::zeros(pairs.len(), pairs.len());
    for (r, &(i, j)) in pairs.iter().enumerate() {
        for (c, &(k, l)) in pairs.iter().enumerate() {
            let v = match (i == j, k == l) {
                (true, true) => f.mul(g.get(i, k), g.get(i, k)),
                (true, false) => f.mul(g.get(i, k), g.get(i, l)),
                (false, true) => f.mul(two, f.mul(g.get(i, k), g.get(j, k))),
                (false, false) => f.add(f.mul(g.get(i, k), g.get(j, l)), f.mul(g.get(i, l), g.get(j, k))),
            };
            out.set(r, c, v);
        }
    }
    out
}

fn pair_pos(pairs: &[(usize, usize)], a: usize, b: usize) -> usize {
    let key = (a.min(b), a.max(b));
    pairs.iter().position(|&p| p == key).expect("pair index")
}

/// `N = GF(3)^7` with basis `e₁,e₂,e₃,x,f₁,f₂,f₃` and Gram `[[0,0,I],[0,1,0],[I,0,0]]`.
fn omega7_hyperbolic() -> Result<(QuadraticSpace, MatrixGroup), ConstructionError> {
    let f = gf3();
    let mut g = Mat::zeros(7, 7);
    for i in 0..3 {
        g.set(i, 4 + i, 1);
        g.set(4 + i, i, 1);
    }
    g.set(3, 3, 1);
    let space = QuadraticSpace::new(f, g)?;
    let group = omega_generators(&space)?;
    Ok((space, group))
}

/// `Ω₇(3)` acting on `∧²N` (dimension 21); base points `(e₁ − ξf₁)∧x`.
pub fn wedge_square_rep() -> Result<ConstructedCase, ConstructionError> {
    let (nat, g7) = omega7_hyperbolic()?;
    let f = nat.field().clone();
    let space = QuadraticSpace::new(f.clone(), wedge_gram(&f, nat.gram()))?;
    let gens = g7.gens().iter().map(|g| wedge_matrix(&f, g)).collect();
    let group = MatrixGroup::new(f.clone(), 21, gens)?.with_label("Omega_7(3) on wedge^2");
    let pairs = wedge_pairs(7);
    let mut base_points = Vec::new();
    for (name, xi) in [("plus-xi", 1), ("minus-xi", 2)] {
        // (e1 − ξf1)∧x = e1∧x − ξ f1∧x = e1∧x + ξ x∧f1
        let mut v = vec![0; 21];
        v[pair_pos(&pairs, 0, 3)] = 1;
        v[pair_pos(&pairs, 3, 4)] = xi;
        base_points.push(base(name, v, &space)?);
    }
    ConstructedCase {
        label: "wedge-omega7".into(),
        space,
        group,
        base_points,
        citation: "adjoint-type module of Omega_7(3)".into(),
    }
    .finish()
}

/// `Ω₇(3)` on `w^⊥/(w^⊥∩⟨w⟩)` inside `S²N`, `w = Σ s_{e_i f_i} + s_xx`.
/// Base points are the images of `s_{e₁e₁} + ξ·s_{f₁f₁}` and of `(e₁ − ξf₁)·x`.
pub fn sym_square_quotient_rep() -> Result<ConstructedCase, ConstructionError> {
    let (nat, g7) = omega7_hyperbolic()?;
    let f = nat.field().clone();
    let pairs = sym_pairs(7);
    let big_gram = sym_gram(&f, nat.gram());
    let mut w = vec![0; pairs.len()];
    for i in 0..3 {
        w[pair_pos(&pairs, i, 4 + i)] = 1;
    }
    w[pair_pos(&pairs, 3, 3)] = 1;
    let big_space = QuadraticSpace::new(f.clone(), big_gram.clone())?;
    let wperp = big_space.perp(&[w.clone()]);
    let rad = radical_of(&f, &big_gram, &wperp);
    let sq = Subquotient::new(&f, wperp, &rad)?;
    let space = QuadraticSpace::new(f.clone(), sq.gram(&big_gram))?;
    let gens = g7.gens().iter().map(|g| sq.matrix(&sym_matrix(&f, g))).collect::<Result<Vec<_>, _>>()?;
    let group = MatrixGroup::new(f.clone(), sq.dim(), gens)?.with_label("Omega_7(3) on S^2 quotient");
    let mut base_points = Vec::new();
    for (name, xi) in [("plus-xi", 1), ("minus-xi", 2)] {
        let mut v = vec![0; pairs.len()];
        v[pair_pos(&pairs, 0, 0)] = 1;
        v[pair_pos(&pairs, 4, 4)] = xi;
        base_points.push(base(name, sq.project(&v)?, &space)?);
    }
    // (e₁ − ξf₁)·x, the symmetric counterpart of the wedge base points
    for (name, xi) in [("axis-plus-xi", 1), ("axis-minus-xi", 2)] {
        let mut v = vec![0; pairs.len()];
        v[pair_pos(&pairs, 0, 3)] = 1;
        v[pair_pos(&pairs, 3, 4)] = f.neg(xi);
        base_points.push(base(name, sq.project(&v)?, &space)?);
    }
    ConstructedCase {
        label: "sym-omega7".into(),
        space,
        group,
        base_points,
        citation: "symmetric-square module of Omega_7(3)".into(),
    }
    .finish()
}

/// Symplectic `N = GF(3)^6`, basis `e₁,e₂,e₃,f₁,f₂,f₃`, `B = [[0,I],[−I,0]]`,
/// and `Sp₆(3)` generated by transvections `x ↦ x + λB(x,v)v` for
/// `v ∈ {e_i, f_i, e_i+f_j (i≠j)}` and `λ = ±1`.
pub fn sp6_natural() -> (FiniteField, Mat, Vec<Mat>) {
    let f = gf3();
    let mut b = Mat::zeros(6, 6);
    for i in 0..3 {
        b.set(i, 3 + i, 1);
        b.set(3 + i, i, 2);
    }
    let mut seeds = Vec::new();
    for i in 0..3 {
        seeds.push(unit(6, i));
    }
    for i in 0..3 {
        seeds.push(unit(6, 3 + i));
    }
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let mut v = unit(6, i);
                v[3 + j] = 1;
                seeds.push(v);
            }
        }
    }
    let mut gens = Vec::new();
    for v in &seeds {
        let bv = vec_mat(v, &b.transpose(), &f); // (B vᵀ)ᵀ
        for lam in [1, 2] {
            let mut t = Mat::identity(6);
            for i in 0..6 {
                let c = f.mul(lam, bv[i]);
                if c != 0 {
                    for j in 0..6 {
                        t.set(i, j, f.add(t.get(i, j), f.mul(c, v[j])));
                    }
                }
            }
            gens.push(t);
        }
    }
    (f, b, gens)
}

/// `Sp₆(3)` on `S²N` (dimension 21) with the form induced from `B⊗B`; base
/// points `e₁⊗e₁ + ξ f₁⊗f₁`, plus a `+` point with an orbit of 10614240 points.
pub fn sp6_sym_square() -> Result<ConstructedCase, ConstructionError> {
    let (f, b, gens6) = sp6_natural();
    let space = QuadraticSpace::new(f.clone(), sym_gram(&f, &b))?;
    let gens = gens6.iter().map(|g| sym_matrix(&f, g)).collect();
    let group = MatrixGroup::new(f.clone(), 21, gens)?.with_label("Sp_6(3) on S^2");
    let pairs = sym_pairs(6);
    let mut base_points = Vec::new();
    for (name, xi) in [("plus-xi", 1), ("minus-xi", 2)] {
        let mut v = vec![0; 21];
        v[pair_pos(&pairs, 0, 0)] = 1;
        v[pair_pos(&pairs, 3, 3)] = xi;
        base_points.push(base(name, v, &space)?);
    }
    // s_{e₁f₂} + s_{e₂e₂} − s_{e₂e₃} + s_{e₃e₃} + s_{f₃f₃}: a + point whose
    // stabiliser in Sp₆(3) has order 864, orbit 10614240
    let mut v = vec![0; 21];
    for (i, j, c) in [(0, 4, 1), (1, 1, 1), (1, 2, 2), (2, 2, 1), (5, 5, 1)] {
        v[pair_pos(&pairs, i, j)] = c;
    }
    base_points.push(pinned("wide-plus", v, Sign::Plus));
    ConstructedCase {
        label: "sp6-sym".into(),
        space,
        group,
        base_points,
        citation: "symmetric square of Sp_6(3)".into(),
    }
    .finish()
}

/// `Sp₆(3)` on `w^⊥/⟨w⟩` inside `∧²N` with `w = Σ e_i∧f_i` (dimension 13).
/// Base points are the images of `e₁∧e₂ + ξ f₁∧f₂`.
pub fn symplectic_lambda2_module() -> Result<ConstructedCase, ConstructionError> {
    let (f, b, gens6) = sp6_natural();
    let big_gram = wedge_gram(&f, &b);
    let pairs = wedge_pairs(6);
    let mut w = vec![0; 15];
    for i in 0..3 {
        w[pair_pos(&pairs, i, 3 + i)] = 1;
    }
    let big_space_perp = {
        // w^⊥ with respect to the (possibly degenerate) big form
        let pol = vec_mat(&w, &big_gram, &f);
        let col = Mat::from_rows(&pol.iter().map(|&x| vec![x]).collect::<Vec<_>>());
        col.left_kernel(&f)
    };
    let rad = radical_of(&f, &big_gram, &big_space_perp);
    let sq = Subquotient::new(&f, big_space_perp, &rad)?;
    if sq.dim() != 13 {
        return Err(ConstructionError::SelfCheck(format!("lambda_2 quotient has dimension {}", sq.dim())));
    }
    let space = QuadraticSpace::new(f.clone(), sq.gram(&big_gram))?;
    let gens = gens6.iter().map(|g| sq.matrix(&wedge_matrix(&f, g))).collect::<Result<Vec<_>, _>>()?;
    let group = MatrixGroup::new(f.clone(), 13, gens)?.with_label("Sp_6(3) on lambda_2");
    let mut base_points = Vec::new();
    for (name, xi) in [("plus-xi", 1), ("minus-xi", 2)] {
        let mut v = vec![0; 15];
        v[pair_pos(&pairs, 0, 1)] = 1;
        v[pair_pos(&pairs, 3, 4)] = xi;
        let p = sq.project(&v)?;
        if space.q(&p) != 0 {
            base_points.push(base(name, p, &space)?);
        }
    }
    ConstructedCase {
        label: "sp6-lambda2".into(),
        space,
        group,
        base_points,
        citation: "13-dimensional module of Sp_6(3)".into(),
    }
    .finish()
}

/// `Ω₃(3) × Ω₅(3)` on `V₃ ⊗ V₅` (dimension 15); base point `x₁⊗x₁`.
pub fn tensor_product_subgroup(n1: usize, n2: usize) -> Result<ConstructedCase, ConstructionError> {
    if n1 % 2 == 0 || n2 % 2 == 0 || n1 >= n2 || n1 < 3 || n1 * n2 > 32 {
        return Err(ConstructionError::Range(format!(
            "tensor case needs odd 3 ≤ n1 < n2 with n1·n2 ≤ 32, got {n1}, {n2}"
        )));
    }
    let f = gf3();
    let s1 = standard_space(n1, &f, SquareClass::Square)?;
    let s2 = standard_space(n2, &f, SquareClass::Square)?;
    let (g1, g2) = (omega_generators(&s1)?, omega_generators(&s2)?);
    let (i1, i2) = (Mat::identity(n1), Mat::identity(n2));
    let mut gens: Vec<Mat> = g1.gens().iter().map(|g| g.kron(&i2, &f)).collect();
    gens.extend(g2.gens().iter().map(|g| i1.kron(g, &f)));
    let n = n1 * n2;
    let space = QuadraticSpace::new(f.clone(), s1.gram().kron(s2.gram(), &f))?;
    let group = MatrixGroup::new(f, n, gens)?.with_label(format!("Omega_{n1}(3) x Omega_{n2}(3)"));
    let base_points = vec![base("x1(x)x1", unit(n, 0), &space)?];
    ConstructedCase {
        label: format!("tensor-{n1}x{n2}"),
        space,
        group,
        base_points,
        citation: "tensor-product subgroup".into(),
    }
    .finish()
}

/// `(Ω₅(3) × Ω₅(3))⋊⟨τ⟩` on `V₅ ⊗ V₅` (dimension 25), `τ` the swap; base point `x₁⊗x₁`.
pub fn tensor_wreath_subgroup() -> Result<ConstructedCase, ConstructionError> {
    let f = gf3();
    let n0 = 5;
    let s = standard_space(n0, &f, SquareClass::Square)?;
    let g = omega_generators(&s)?;
    let id = Mat::identity(n0);
    let mut gens: Vec<Mat> = g.gens().iter().map(|h| h.kron(&id, &f)).collect();
    gens.extend(g.gens().iter().map(|h| id.kron(h, &f)));
    let n = n0 * n0;
    let mut swap = Mat::zeros(n, n);
    for a in 0..n0 {
        for b in 0..n0 {
            swap.set(a * n0 + b, b * n0 + a, 1);
        }
    }
    gens.push(swap);
    let space = QuadraticSpace::new(f.clone(), s.gram().kron(s.gram(), &f))?;
    let group = MatrixGroup::new(f, n, gens)?.with_label("Omega_5(3) wr 2 (tensor)");
    let base_points = vec![base("x1(x)x1", unit(n, 0), &space)?];
    ConstructedCase {
        label: "tensorwreath-n25".into(),
        space,
        group,
        base_points,
        citation: "tensor-induced subgroup".into(),
    }
    .finish()
}

/// `O₃(3) ≀ S₃` on `V₁ ⊥ V₂ ⊥ V₃` (dimension 9, Gram `I₉`). `O₃(3)` on an
/// orthonormal basis is the group of signed permutation matrices.
pub fn imprimitive_o3_wreath() -> Result<ConstructedCase, ConstructionError> {
    let f = gf3();
    let n = 9;
    let space = standard_space(n, &f, SquareClass::Square)?;
    let perm = |p: &[usize]| {
        let mut m = Mat::zeros(n, n);
        for (i, &j) in p.iter().enumerate() {
            m.set(i, j, 1);
        }
        m
    };
    let gens = vec![
        // inside V₁: a sign change, a transposition and a 3-cycle
        Mat::diagonal(&[2, 1, 1, 1, 1, 1, 1, 1, 1]),
        perm(&[1, 0, 2, 3, 4, 5, 6, 7, 8]),
        perm(&[1, 2, 0, 3, 4, 5, 6, 7, 8]),
        // block permutations (V₁ V₂) and (V₁ V₂ V₃)
        perm(&[3, 4, 5, 0, 1, 2, 6, 7, 8]),
        perm(&[3, 4, 5, 6, 7, 8, 0, 1, 2]),
    ];
    let group = MatrixGroup::new(f, n, gens)?.with_label("O_3(3) wr S_3");
    let mut x12 = unit(n, 0);
    x12[1] = 1;
    let base_points = vec![base("x1", unit(n, 0), &space)?, base("x1+x2", x12, &space)?];
    ConstructedCase {
        label: "imprimitive-o3wr3".into(),
        space,
        group,
        base_points,
        citation: "stabiliser of an orthogonal decomposition into 3-spaces".into(),
    }
    .finish()
}

/// `Ω(W₁) × Ω(W₂)` on `W₁ ⊥ W₂` with `W₁ = ⟨x₁,…,x_b⟩` inside the
/// orthonormal `n`-space; base point `x₁ + x₂`, a `+` point of `W₁` when `b = 3`.
pub fn orthogonal_sum_subgroup(n: usize, b: usize) -> Result<ConstructedCase, ConstructionError> {
    if b % 2 == 0 || b < 3 || n <= b + 2 || n % 2 == 0 {
        return Err(ConstructionError::Range(format!(
            "orthogonal sum needs odd b ≥ 3 and odd n ≥ b + 3, got ({n}, {b})"
        )));
    }
    let f = gf3();
    let space = standard_space(n, &f, SquareClass::Square)?;
    let w1 = standard_space(b, &f, SquareClass::Square)?;
    let w2 = standard_space(n - b, &f, SquareClass::Square)?;
    let mut gens = Vec::new();
    for h in omega_generators(&w1)?.gens() {
        gens.push(Mat::block_diag(&[h, &Mat::identity(n - b)]));
    }
    for h in omega_generators(&w2)?.gens() {
        gens.push(Mat::block_diag(&[&Mat::identity(b), h]));
    }
    let group = MatrixGroup::new(f, n, gens)?.with_label(format!("Omega_{b}(3) x Omega_{}(3)", n - b));
    let mut x12 = unit(n, 0);
    x12[1] = 1;
    let base_points = vec![base("x1+x2", x12, &space)?];
    ConstructedCase {
        label: format!("orthsum-{n}-{b}"),
        space,
        group,
        base_points,
        citation: "stabiliser of a non-degenerate subspace".into(),
    }
    .finish()
}

/// Every label accepted by [`build`].
pub fn labels() -> Vec<String> {
    let mut out: Vec<String> = [3, 5, 7, 9].iter().map(|n| format!("omega-n{n}")).collect();
    out.extend([5, 7, 9, 11, 13].iter().map(|n| format!("wreath-n{n}")));
    for (n, a) in [(5, 1), (5, 2), (7, 1), (7, 2), (7, 3), (9, 1)] {
        out.push(format!("parabolic-n{n}-a{a}"));
    }
    out.push("fieldext-n9".into());
    out.extend((8..=16).map(|n| format!("deleted-n{n}")));
    out.extend(
        [
            "wedge-omega7",
            "sym-omega7",
            "sp6-sym",
            "sp6-lambda2",
            "tensor-3x5",
            "tensorwreath-n25",
            "imprimitive-o3wr3",
            "orthsum-7-3",
            "l2-13-heart",
        ]
        .map(String::from),
    );
    out
}

fn num(s: &str) -> Option<usize> {
    s.parse().ok()
}

/// Builds a case from its label (see [`labels`]).
pub fn build(label: &str) -> Result<ConstructedCase, ConstructionError> {
    let bad = || ConstructionError::Range(format!("unknown case label '{label}'"));
    if let Some(n) = label.strip_prefix("omega-n") {
        return natural_omega(num(n).ok_or_else(bad)?);
    }
    if let Some(n) = label.strip_prefix("wreath-n") {
        return wreath_o1_subgroup(num(n).ok_or_else(bad)?);
    }
    if let Some(rest) = label.strip_prefix("parabolic-n") {
        let (n, a) = rest.split_once("-a").ok_or_else(bad)?;
        return parabolic_subgroup(num(n).ok_or_else(bad)?, num(a).ok_or_else(bad)?);
    }
    if let Some(n) = label.strip_prefix("fieldext-n") {
        return field_extension_subgroup(num(n).ok_or_else(bad)?);
    }
    if let Some(n) = label.strip_prefix("deleted-n") {
        return deleted_permutation_module(num(n).ok_or_else(bad)?);
    }
    if let Some(rest) = label.strip_prefix("tensor-") {
        let (a, b) = rest.split_once('x').ok_or_else(bad)?;
        return tensor_product_subgroup(num(a).ok_or_else(bad)?, num(b).ok_or_else(bad)?);
    }
    if let Some(rest) = label.strip_prefix("orthsum-") {
        let (a, b) = rest.split_once('-').ok_or_else(bad)?;
        return orthogonal_sum_subgroup(num(a).ok_or_else(bad)?, num(b).ok_or_else(bad)?);
    }
    match label {
        "wedge-omega7" => wedge_square_rep(),
        "sym-omega7" => sym_square_quotient_rep(),
        "sp6-sym" => sp6_sym_square(),
        "sp6-lambda2" => symplectic_lambda2_module(),
        "tensorwreath-n25" => tensor_wreath_subgroup(),
        "imprimitive-o3wr3" => imprimitive_o3_wreath(),
        "l2-13-heart" => psl2_13_heart(),
        _ => Err(bad()),
    }
}
