//! Matrix groups acting on row vectors, reflections, Eichler (Siegel)
//! transformations, spinor norms and generating sets for `Ω(V)`.

use rustc_hash::FxHashSet;

use crate::error::GroupError;
use crate::field::{Elem, FiniteField, SquareClass};
use crate::geometry::{canonical_vectors, PointType, QuadraticSpace, Sign};
use crate::linalg::{vec_add, vec_mat, vec_scale, vec_sub, Mat};

/// Default cap on explicit group enumeration.
pub const GROUP_ENUMERATION_CAP: usize = 100_000;

/// Generators of a finite matrix group; elements act on row vectors from the right.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixGroup {
    field: FiniteField,
    dim: usize,
    gens: Vec<Mat>,
    label: Option<String>,
}

impl MatrixGroup {
    pub fn new(field: FiniteField, dim: usize, gens: Vec<Mat>) -> Result<Self, GroupError> {
        for (index, g) in gens.iter().enumerate() {
            if g.rows() != dim || g.cols() != dim {
                return Err(GroupError::Dimension { group: dim, got: g.rows().max(g.cols()) });
            }
            if g.det(&field) == 0 {
                return Err(GroupError::Singular { index });
            }
        }
        Ok(MatrixGroup { field, dim, gens, label: None })
    }

    pub fn trivial(field: FiniteField, dim: usize) -> Self {
        MatrixGroup { field, dim, gens: Vec::new(), label: None }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn gens(&self) -> &[Mat] {
        &self.gens
    }
    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn push(&mut self, g: Mat) -> Result<(), GroupError> {
        if g.rows() != self.dim || g.cols() != self.dim {
            return Err(GroupError::Dimension { group: self.dim, got: g.rows() });
        }
        if g.det(&self.field) == 0 {
            return Err(GroupError::Singular { index: self.gens.len() });
        }
        self.gens.push(g);
        Ok(())
    }

    /// Appends all generators of `other`.
    pub fn extend(&mut self, other: &MatrixGroup) -> Result<(), GroupError> {
        for g in other.gens() {
            self.push(g.clone())?;
        }
        Ok(())
    }

    /// `g·G·gᵀ = G` for every generator.
    pub fn preserves_form(&self, gram: &Mat) -> bool {
        self.gens.iter().all(|g| preserves(g, gram, &self.field))
    }

    pub fn check_preserves(&self, gram: &Mat) -> Result<(), GroupError> {
        if self.preserves_form(gram) {
            Ok(())
        } else {
            Err(GroupError::NotIsometry)
        }
    }

    /// Lists every element by closure under right multiplication.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<Mat>, GroupError> {
        let id = Mat::identity(self.dim);
        let mut seen: FxHashSet<Vec<Elem>> = FxHashSet::default();
        seen.insert(id.data().to_vec());
        let mut elems = vec![id];
        let mut i = 0;
        while i < elems.len() {
            for g in &self.gens {
                let h = elems[i].mul(g, &self.field);
                if seen.insert(h.data().to_vec()) {
                    if elems.len() >= cap {
                        return Err(GroupError::GroupCap { cap });
                    }
                    elems.push(h);
                }
            }
            i += 1;
        }
        Ok(elems)
    }

    pub fn order(&self, cap: usize) -> Result<usize, GroupError> {
        Ok(self.enumerate(cap)?.len())
    }
}

fn preserves(g: &Mat, gram: &Mat, f: &FiniteField) -> bool {
    g.mul(gram, f).mul(&g.transpose(), f) == *gram
}

pub fn is_isometry(space: &QuadraticSpace, g: &Mat) -> bool {
    g.rows() == space.dim() && g.cols() == space.dim() && preserves(g, space.gram(), space.field())
}

/// `v ↦ v − (f(v,u)/Q(u))·u`.
pub fn reflection(space: &QuadraticSpace, u: &[Elem]) -> Result<Mat, GroupError> {
    let f = space.field();
    let qu = space.q(u);
    if qu == 0 {
        return Err(GroupError::SingularReflection);
    }
    let n = space.dim();
    let col = space.polar(u); // G·uᵀ
    let k = f.neg(f.inv(qu));
    let mut r = Mat::identity(n);
    for i in 0..n {
        let c = f.mul(k, col[i]);
        if c == 0 {
            continue;
        }
        for (j, &uj) in u.iter().enumerate() {
            let v = f.add(r.get(i, j), f.mul(c, uj));
            r.set(i, j, v);
        }
    }
    Ok(r)
}

/// Writes an isometry as a product of reflections.
///
/// Returns `u₁, …, u_k` with `g·r_{u₁}⋯r_{u_k} = I`, i.e. `g = r_{u_k}⋯r_{u₁}`.
/// Works through an orthogonal basis `b₀, b₁, …`, fixing the lowest-index
/// vector not yet fixed. With `w = b·h − b` non-singular one reflection `r_w`
/// suffices; when `w` is singular the step first reflects in `b·h + b`
/// (which has `Q = 4Q(b) ≠ 0`) and then in `b`.
pub fn reflection_decomposition(space: &QuadraticSpace, g: &Mat) -> Result<Vec<Vec<Elem>>, GroupError> {
    if !is_isometry(space, g) {
        return Err(GroupError::NotIsometry);
    }
    let f = space.field();
    let n = space.dim();
    let basis = space.orthogonal_basis();
    let mut h = g.clone();
    let mut used = Vec::new();
    for i in 0..n {
        let b = basis.row(i);
        let bh = vec_mat(b, &h, f);
        let w = vec_sub(&bh, b, f);
        if w.iter().all(|&x| x == 0) {
            continue;
        }
        if space.q(&w) != 0 {
            h = h.mul(&reflection(space, &w)?, f);
            used.push(w);
        } else {
            let s = vec_add(&bh, b, f);
            h = h.mul(&reflection(space, &s)?, f).mul(&reflection(space, b)?, f);
            used.push(s);
            used.push(b.to_vec());
        }
        if vec_mat(b, &h, f) != b {
            return Err(GroupError::DecompositionFailed(i));
        }
    }
    if !h.is_identity() {
        return Err(GroupError::DecompositionFailed(n));
    }
    Ok(used)
}

/// Spinor norm of an isometry of determinant 1: the square class of `∏Q(uᵢ)`
/// over a reflection decomposition. `g ∈ Ω` iff the result is `Square`.
pub fn spinor_norm(space: &QuadraticSpace, g: &Mat) -> Result<SquareClass, GroupError> {
    if !is_isometry(space, g) {
        return Err(GroupError::NotIsometry);
    }
    let f = space.field();
    let det = g.det(f);
    if det != 1 {
        return Err(GroupError::DeterminantNotOne(det));
    }
    let mut prod = 1;
    for u in reflection_decomposition(space, g)? {
        prod = f.mul(prod, space.q(&u));
    }
    Ok(f.square_class(prod).map_err(crate::error::GeometryError::from)?)
}

/// `x ↦ x + f(x,v)u − f(x,u)v − Q(v)f(x,u)u` for singular `u` and `v ⊥ u`.
pub fn eichler(space: &QuadraticSpace, u: &[Elem], v: &[Elem]) -> Result<Mat, GroupError> {
    let f = space.field();
    let n = space.dim();
    if u.len() != n || v.len() != n {
        return Err(GroupError::Dimension { group: n, got: u.len().max(v.len()) });
    }
    if u.iter().all(|&x| x == 0) {
        return Err(GroupError::EichlerPrecondition("u is zero"));
    }
    if space.q(u) != 0 {
        return Err(GroupError::EichlerPrecondition("u is not singular"));
    }
    if space.bilinear(u, v) != 0 {
        return Err(GroupError::EichlerPrecondition("v is not perpendicular to u"));
    }
    // v ∈ ⟨u⟩ ⇔ rank[u; v] = 1
    if Mat::from_rows(&[u.to_vec(), v.to_vec()]).rank(f) < 2 {
        return Err(GroupError::EichlerPrecondition("v lies in <u>"));
    }
    let gv = space.polar(v);
    let gu = space.polar(u);
    let qv = space.q(v);
    let mut e = Mat::identity(n);
    for i in 0..n {
        let a = gv[i];
        let b = f.neg(gu[i]);
        let c = f.neg(f.mul(qv, gu[i]));
        for j in 0..n {
            let add = f.add(f.add(f.mul(a, u[j]), f.mul(b, v[j])), f.mul(c, u[j]));
            if add != 0 {
                e.set(i, j, f.add(e.get(i, j), add));
            }
        }
    }
    Ok(e)
}

/// A hyperbolic pair `(e, f)`: both singular, `f(e, f) = 1`.
pub fn hyperbolic_pair(space: &QuadraticSpace) -> Result<(Vec<Elem>, Vec<Elem>), GroupError> {
    let fld = space.field();
    let n = space.dim();
    let e = canonical_vectors(n, fld)
        .find(|v| space.q(v) == 0)
        .ok_or_else(|| GroupError::SelfCheck("space is anisotropic".into()))?;
    let pol = space.polar(&e);
    let j = pol.iter().position(|&x| x != 0).expect("non-degenerate");
    let mut y = vec![0; n];
    y[j] = fld.inv(pol[j]);
    let qy = space.q(&y);
    let ff = vec_sub(&y, &vec_scale(&e, qy, fld), fld);
    debug_assert_eq!(space.q(&ff), 0);
    debug_assert_eq!(space.bilinear(&e, &ff), 1);
    Ok((e, ff))
}

/// Order of `Ω_n(q)`; `sign` is required for even `n`.
pub fn omega_order(n: u32, q: u64, sign: Option<Sign>) -> u128 {
    let q = q as u128;
    let gcd = if q % 2 == 1 { 2 } else { 1 };
    if n % 2 == 1 {
        let m = n / 2;
        let mut o = q.pow(m * m);
        for i in 1..=m {
            o *= q.pow(2 * i) - 1;
        }
        o / gcd
    } else {
        let m = n / 2;
        let eps = sign.unwrap_or(Sign::Plus);
        let top = match eps {
            Sign::Plus => q.pow(m) - 1,
            Sign::Minus => q.pow(m) + 1,
        };
        let mut o = q.pow(m * (m - 1)) * top;
        for i in 1..m {
            o *= q.pow(2 * i) - 1;
        }
        o / gcd
    }
}

/// Generators of `Ω(V)`.
///
/// Dimension ≥ 5: Eichler transformations `E(e, λw)`, `E(f, λw)` for a hyperbolic
/// pair `(e, f)`, `w` running over a basis of `⟨e,f⟩^⊥` and `λ` over an additive
/// basis of the field. Dimension 3 and 4: products of two reflections with square
/// spinor norm, pruned to an irredundant list while the group is enumerated.
///
/// Self-checks: every generator is an isometry with determinant 1 and square
/// spinor norm; small groups are enumerated and compared with `|Ω|`; over
/// GF(3) in odd dimension ≤ 11 the orbits on both point types have the full
/// closed-form sizes.
pub fn omega_generators(space: &QuadraticSpace) -> Result<MatrixGroup, GroupError> {
    let n = space.dim();
    let fld = space.field().clone();
    if n < 3 {
        return Err(GroupError::Dimension { group: 3, got: n });
    }
    let group = if n >= 5 { eichler_generators(space)? } else { small_dim_generators(space)? };
    for (i, g) in group.gens().iter().enumerate() {
        if spinor_norm(space, g)? != SquareClass::Square {
            return Err(GroupError::SelfCheck(format!("generator {i} has non-square spinor norm")));
        }
    }
    if fld.order() == 3 && n % 2 == 1 && n <= 11 {
        let m = (n / 2) as u32;
        for xi in [Sign::Plus, Sign::Minus] {
            let want = (3u64.pow(m) * (3u64.pow(m) as i64 + xi.as_i64()) as u64 / 2) as usize;
            let start = first_point_of_type(space, xi)?;
            let got = crate::orbit::orbit(&group, &start)?.len();
            if got != want {
                return Err(GroupError::SelfCheck(format!("orbit of type {xi} has size {got}, expected {want}")));
            }
        }
    }
    Ok(group.with_label(format!("Omega_{n}({})", fld.order())))
}

/// First canonical vector of odd-dimensional type `xi`.
pub fn first_point_of_type(space: &QuadraticSpace, xi: Sign) -> Result<Vec<Elem>, GroupError> {
    let want = PointType::from_sign(xi);
    for v in canonical_vectors(space.dim(), space.field()) {
        let g = space.q(&v);
        if g != 0 && space.type_for_norm(g)? == want {
            return Ok(v);
        }
    }
    Err(GroupError::SelfCheck(format!("no point of type {xi}")))
}

fn additive_basis(f: &FiniteField) -> Vec<Elem> {
    let x = f.generator_x();
    (0..f.degree()).map(|i| f.pow(if f.degree() == 1 { 1 } else { x }, i as u64)).collect()
}

fn eichler_generators(space: &QuadraticSpace) -> Result<MatrixGroup, GroupError> {
    let fld = space.field();
    let (e, ff) = hyperbolic_pair(space)?;
    let w = space.perp(&[e.clone(), ff.clone()]);
    let lambdas = additive_basis(fld);
    let mut gens = Vec::new();
    for u in [&e, &ff] {
        for j in 0..w.rows() {
            for &lam in &lambdas {
                gens.push(eichler(space, u, &vec_scale(w.row(j), lam, fld))?);
            }
        }
    }
    MatrixGroup::new(fld.clone(), space.dim(), gens)
}

fn small_dim_generators(space: &QuadraticSpace) -> Result<MatrixGroup, GroupError> {
    let fld = space.field();
    let n = space.dim();
    let mut u0 = None;
    let mut u1 = None;
    for v in canonical_vectors(n, fld) {
        let g = space.q(&v);
        if g == 0 {
            continue;
        }
        match fld.square_class(g).map_err(crate::error::GeometryError::from)? {
            SquareClass::Square if u0.is_none() => u0 = Some(v),
            SquareClass::NonSquare if u1.is_none() => u1 = Some(v),
            _ => {}
        }
        if u0.is_some() && u1.is_some() {
            break;
        }
    }
    let (u0, u1) = (u0.expect("square norm exists"), u1.expect("non-square norm exists"));
    let (r0, r1) = (reflection(space, &u0)?, reflection(space, &u1)?);
    let expected = if n == 3 {
        omega_order(3, fld.order() as u64, None)
    } else {
        omega_order(4, fld.order() as u64, Some(space.sign_by_discriminant()?))
    };
    let mut group = MatrixGroup::trivial(fld.clone(), n);
    let mut elems: FxHashSet<Vec<Elem>> = FxHashSet::default();
    elems.insert(Mat::identity(n).data().to_vec());
    for v in canonical_vectors(n, fld) {
        if elems.len() as u128 == expected {
            break;
        }
        let g = space.q(&v);
        if g == 0 {
            continue;
        }
        let base = match fld.square_class(g).map_err(crate::error::GeometryError::from)? {
            SquareClass::Square => &r0,
            SquareClass::NonSquare => &r1,
        };
        let cand = base.mul(&reflection(space, &v)?, fld);
        if elems.contains(cand.data()) {
            continue;
        }
        group.push(cand)?;
        elems = group.enumerate(GROUP_ENUMERATION_CAP)?.into_iter().map(|m| m.data().to_vec()).collect();
    }
    if elems.len() as u128 != expected {
        return Err(GroupError::SelfCheck(format!("generated {} elements, expected {expected}", elems.len())));
    }
    Ok(group)
}

/// Small-scale oracle on small permutation groups: the number of `(M, P)`
/// double cosets, the number of `M`-orbits on the cosets of `P`, and the
/// permutation-character inner product `(1_M^G, 1_P^G)`.
pub mod perm {
    use rustc_hash::{FxHashMap, FxHashSet};

    /// Permutation of `{0..n}` as an image list.
    pub type Perm = Vec<usize>;

    pub fn compose(a: &Perm, b: &Perm) -> Perm {
        // apply a, then b
        a.iter().map(|&x| b[x]).collect()
    }

    pub fn identity(n: usize) -> Perm {
        (0..n).collect()
    }

    /// Parses 1-based cycle notation such as `"(1 2 3)(4 5)"`.
    pub fn from_cycles(n: usize, cycles: &str) -> Perm {
        let mut p = identity(n);
        for cyc in cycles.split(')') {
            let pts: Vec<usize> =
                cyc.trim_start_matches(['(', ' ']).split([' ', ',']).filter_map(|t| t.parse::<usize>().ok()).collect();
            for i in 0..pts.len() {
                p[pts[i] - 1] = pts[(i + 1) % pts.len()] - 1;
            }
        }
        p
    }

    pub fn closure(n: usize, gens: &[Perm], cap: usize) -> Option<Vec<Perm>> {
        let mut seen: FxHashSet<Perm> = FxHashSet::default();
        let id = identity(n);
        seen.insert(id.clone());
        let mut out = vec![id];
        let mut i = 0;
        while i < out.len() {
            for g in gens {
                let h = compose(&out[i], g);
                if seen.insert(h.clone()) {
                    out.push(h);
                    if out.len() > cap {
                        return None;
                    }
                }
            }
            i += 1;
        }
        Some(out)
    }

    #[derive(Clone, Copy, Debug, PartialEq, Eq)]
    pub struct DoubleCosetCheck {
        pub double_cosets: usize,
        pub m_orbits: usize,
        /// `(1_M^G, 1_P^G)` from fixed-point counts.
        pub inner_product: usize,
    }

    /// `G`, `P`, `M` given by generators on `n` points; `|G| ≤ 10⁴`.
    pub fn toy_double_coset_check(n: usize, g: &[Perm], p: &[Perm], m: &[Perm]) -> Option<DoubleCosetCheck> {
        let gg = closure(n, g, 10_000)?;
        let pp = closure(n, p, 10_000)?;
        let mm = closure(n, m, 10_000)?;
        let index: FxHashMap<&Perm, usize> = gg.iter().enumerate().map(|(i, x)| (x, i)).collect();
        // Right cosets Px: label each element by the smallest index in its coset.
        let coset_of = |x: &Perm| pp.iter().map(|h| index[&compose(h, x)]).min().unwrap();
        let mut coset_ids: Vec<usize> = gg.iter().map(coset_of).collect::<FxHashSet<_>>().into_iter().collect();
        coset_ids.sort_unstable();
        let cosets: Vec<&Perm> = coset_ids.iter().map(|&i| &gg[i]).collect();

        // Double cosets M x P.
        let mut covered = vec![false; gg.len()];
        let mut double_cosets = 0;
        for i in 0..gg.len() {
            if covered[i] {
                continue;
            }
            double_cosets += 1;
            for a in &mm {
                for b in &pp {
                    covered[index[&compose(&compose(a, &gg[i]), b)]] = true;
                }
            }
        }

        // M-orbits on right cosets Px under x ↦ xm.
        let mut seen: FxHashSet<usize> = FxHashSet::default();
        let mut m_orbits = 0;
        for c in &cosets {
            let id = coset_of(c);
            if seen.contains(&id) {
                continue;
            }
            m_orbits += 1;
            for a in &mm {
                seen.insert(coset_of(&compose(c, a)));
            }
        }

        // (1/|G|)·Σ_g fix_{G/M}(g)·fix_{G/P}(g); fix_{G/H}(g) = |{x : xgx⁻¹ ∈ H}|/|H|.
        let inv = |x: &Perm| {
            let mut r = vec![0; x.len()];
            for (i, &y) in x.iter().enumerate() {
                r[y] = i;
            }
            r
        };
        let m_set: FxHashSet<&Perm> = mm.iter().collect();
        let p_set: FxHashSet<&Perm> = pp.iter().collect();
        let mut total = 0usize;
        for y in &gg {
            let (mut fm, mut fp) = (0, 0);
            for x in &gg {
                let conj = compose(&compose(x, y), &inv(x));
                fm += m_set.contains(&conj) as usize;
                fp += p_set.contains(&conj) as usize;
            }
            total += (fm / mm.len()) * (fp / pp.len());
        }
        Some(DoubleCosetCheck { double_cosets, m_orbits, inner_product: total / gg.len() })
    }
}
