//! Holt–Rees style splitting with Norton's irreducibility certificate.
//!
//! A random algebra element `A` is drawn; for each irreducible factor `p` of
//! its characteristic polynomial, lowest degree first, a kernel vector of
//! `p(A)` is spun. A proper submodule splits the module. If
//! `dim ker p(A) = deg p`, every non-zero kernel vector generates the same
//! submodule, so spinning one vector of `ker p(A)` and one of `ker p(A)ᵀ`
//! (under the transposed generators) decides irreducibility.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rank3_core::linalg::{vec_mat, EchelonBasis, Mat};
use rank3_core::{Elem, FiniteField};

use crate::module::GModule;
use crate::poly::{char_poly, irreducible_factors};
use crate::MeatAxeError;

pub const DEFAULT_SEED: u64 = 0x3a7e;
/// Random algebra elements tried per split before giving up.
pub const DEFAULT_TRIES: usize = 200;
pub const MAX_DIM: usize = 128;
const MAX_WORD: usize = 4;

/// `Σ cᵢ·wᵢ` with each `wᵢ` a word in the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    pub terms: Vec<(Elem, Vec<usize>)>,
}

impl AlgebraElement {
    /// One word of length ≤ 4, plus one or two further words added to it.
    pub fn random<R: Rng>(rng: &mut R, ngens: usize, field: &FiniteField) -> Self {
        let nterms = rng.random_range(2..=3);
        let terms = (0..nterms)
            .map(|_| {
                let c = rng.random_range(1..field.order());
                let len = rng.random_range(1..=MAX_WORD);
                (c, (0..len).map(|_| rng.random_range(0..ngens)).collect())
            })
            .collect();
        AlgebraElement { terms }
    }

    pub fn eval(&self, m: &GModule) -> Mat {
        let f = m.field();
        let mut acc = Mat::zeros(m.dim(), m.dim());
        for (c, word) in &self.terms {
            let mut w = Mat::identity(m.dim());
            for &i in word {
                w = w.mul(&m.gens()[i], f);
            }
            acc = acc.add(&w.scale(*c, f), f);
        }
        acc
    }
}

/// Proof of irreducibility: `dim ker p(A) = deg p` and both spins were full.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub element: AlgebraElement,
    /// Monic, constant term first.
    pub poly: Vec<Elem>,
}

impl Certificate {
    fn kernel(&self, m: &GModule) -> Mat {
        poly_eval(&self.poly, &self.element.eval(m), m.field()).left_kernel(m.field())
    }
}

fn poly_eval(p: &[Elem], a: &Mat, f: &FiniteField) -> Mat {
    let n = a.rows();
    let mut acc = Mat::zeros(n, n);
    for &c in p.iter().rev() {
        acc = acc.mul(a, f).add(&Mat::scalar(n, c), f);
    }
    acc
}

enum Outcome {
    Split(EchelonBasis),
    Irreducible(Certificate),
}

fn find_split(m: &GModule, rng: &mut ChaCha8Rng, tries: usize) -> Result<Outcome, MeatAxeError> {
    let f = m.field();
    let dim = m.dim();
    if dim == 1 {
        return Ok(Outcome::Irreducible(Certificate {
            element: AlgebraElement { terms: Vec::new() },
            poly: vec![0, 1],
        }));
    }
    if m.ngens() == 0 {
        let mut e = vec![0; dim];
        e[0] = 1;
        return Ok(Outcome::Split(m.spin(&[e])));
    }
    let transposed = m.transposed();
    for _ in 0..tries {
        let element = AlgebraElement::random(rng, m.ngens(), f);
        let a = element.eval(m);
        let polys = irreducible_factors(&char_poly(&a, f), f, rng);
        let mut powers = vec![Mat::identity(dim), a];
        for p in &polys {
            while powers.len() < p.len() {
                let next = powers[powers.len() - 1].mul(&powers[1], f);
                powers.push(next);
            }
            let pa = p.iter().zip(&powers).fold(Mat::zeros(dim, dim), |acc, (&c, x)| acc.add(&x.scale(c, f), f));
            let kernel = pa.left_kernel(f);
            if kernel.rows() == 0 {
                continue;
            }
            let sub = m.spin(&[kernel.row(0).to_vec()]);
            if sub.rank() < dim {
                return Ok(Outcome::Split(sub));
            }
            if kernel.rows() == p.len() - 1 {
                let dual_kernel = pa.right_kernel(f);
                let dual_sub = transposed.spin(&[dual_kernel.row(0).to_vec()]);
                if dual_sub.rank() < dim {
                    let ann = dual_sub.to_mat().right_kernel(f);
                    return Ok(Outcome::Split(EchelonBasis::from_rows(&ann, f)));
                }
                return Ok(Outcome::Irreducible(Certificate { element, poly: p.clone() }));
            }
        }
    }
    Err(MeatAxeError::Undecided { dim, tries })
}

fn check_dim(m: &GModule) -> Result<(), MeatAxeError> {
    if m.dim() > MAX_DIM {
        return Err(MeatAxeError::TooLarge { dim: m.dim(), limit: MAX_DIM });
    }
    Ok(())
}

/// Norton-certified irreducibility test.
pub fn is_irreducible(m: &GModule, seed: u64) -> Result<bool, MeatAxeError> {
    check_dim(m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(matches!(find_split(m, &mut rng, DEFAULT_TRIES)?, Outcome::Irreducible(_)))
}

/// `upper / lower` for invariant subspaces `lower ⊂ upper` of the ambient
/// module; `top` spans a complement whose rows vanish on the pivots of `lower`.
#[derive(Clone, Debug)]
pub struct Section {
    pub lower: EchelonBasis,
    pub top: EchelonBasis,
}

impl Section {
    pub fn dim(&self) -> usize {
        self.top.rank()
    }

    pub fn upper(&self, f: &FiniteField) -> EchelonBasis {
        let mut u = self.lower.clone();
        for r in self.top.rows() {
            u.insert(r.clone(), f);
        }
        u
    }

    /// The induced action in the coordinates of `top`.
    pub fn action(&self, m: &GModule) -> Result<GModule, MeatAxeError> {
        let f = m.field();
        let mut gens = Vec::with_capacity(m.ngens());
        for (j, g) in m.gens().iter().enumerate() {
            let mut rows = Vec::with_capacity(self.dim());
            for r in self.top.rows() {
                let mut x = vec_mat(r, g, f);
                self.lower.reduce(&mut x, f);
                let coords = self.top.coordinates(&x);
                if !self.top.contains(&x, f) {
                    return Err(MeatAxeError::NotInvariant(j));
                }
                rows.push(coords);
            }
            gens.push(Mat::from_rows(&rows));
        }
        GModule::new(f.clone(), self.dim(), gens)
    }

    /// Splits along a submodule given in section coordinates.
    fn split(&self, sub: &EchelonBasis, f: &FiniteField) -> (Section, Section) {
        let lifts: Vec<Vec<Elem>> = sub
            .rows()
            .iter()
            .map(|c| {
                let mut v = vec![0; self.lower.ambient_dim()];
                for (&ci, r) in c.iter().zip(self.top.rows()) {
                    if ci != 0 {
                        for (x, &y) in v.iter_mut().zip(r) {
                            *x = f.add(*x, f.mul(ci, y));
                        }
                    }
                }
                v
            })
            .collect();
        let mut low_top = EchelonBasis::new(self.lower.ambient_dim());
        let mut mid = self.lower.clone();
        for v in &lifts {
            low_top.insert(v.clone(), f);
            mid.insert(v.clone(), f);
        }
        let mut high_top = EchelonBasis::new(self.lower.ambient_dim());
        for r in self.top.rows() {
            let mut w = r.clone();
            mid.reduce(&mut w, f);
            high_top.insert(w, f);
        }
        (Section { lower: self.lower.clone(), top: low_top }, Section { lower: mid, top: high_top })
    }
}

/// One step of a composition series.
#[derive(Clone, Debug)]
pub struct SeriesStep {
    pub section: Section,
    pub factor: GModule,
    pub certificate: Certificate,
}

/// A composition series `0 = V₀ < V₁ < … < V_k = V`, bottom first.
#[derive(Clone, Debug)]
pub struct CompositionSeries {
    pub steps: Vec<SeriesStep>,
}

/// An isomorphism class of composition factors.
#[derive(Clone, Debug)]
pub struct CompositionFactor {
    pub module: GModule,
    pub multiplicity: usize,
    pub certificate: Certificate,
    /// Positions in the series, bottom first.
    pub positions: Vec<usize>,
}

impl CompositionFactor {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }
}

impl CompositionSeries {
    /// Re-checks the chain against `m`: consecutive sections meet, every
    /// `Vᵢ` is invariant, and each stored factor is the induced action.
    pub fn verify(&self, m: &GModule) -> Result<(), MeatAxeError> {
        let f = m.field();
        let mut below = EchelonBasis::new(m.dim());
        for step in &self.steps {
            let s = &step.section;
            if s.lower.rank() != below.rank() || s.lower.rows().iter().any(|r| !below.contains(r, f)) {
                return Err(MeatAxeError::Reducible);
            }
            let upper = s.upper(f);
            m.is_invariant(&upper)?;
            if s.action(m)? != step.factor {
                return Err(MeatAxeError::Reducible);
            }
            below = upper;
        }
        if below.rank() != m.dim() {
            return Err(MeatAxeError::Reducible);
        }
        Ok(())
    }

    /// Groups the factors into isomorphism classes, in order of first appearance.
    pub fn factors(&self) -> Result<Vec<CompositionFactor>, MeatAxeError> {
        let mut out: Vec<CompositionFactor> = Vec::new();
        'steps: for (i, step) in self.steps.iter().enumerate() {
            for cls in out.iter_mut() {
                if isomorphic(&cls.module, &cls.certificate, &step.factor)? {
                    cls.multiplicity += 1;
                    cls.positions.push(i);
                    continue 'steps;
                }
            }
            out.push(CompositionFactor {
                module: step.factor.clone(),
                multiplicity: 1,
                certificate: step.certificate.clone(),
                positions: vec![i],
            });
        }
        Ok(out)
    }
}

/// Composition series with [`DEFAULT_TRIES`] random elements per split.
pub fn composition_series(m: &GModule, seed: u64) -> Result<CompositionSeries, MeatAxeError> {
    composition_series_with(m, seed, DEFAULT_TRIES)
}

pub fn composition_series_with(m: &GModule, seed: u64, tries: usize) -> Result<CompositionSeries, MeatAxeError> {
    check_dim(m)?;
    let f = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut whole = EchelonBasis::new(m.dim());
    for i in 0..m.dim() {
        let mut e = vec![0; m.dim()];
        e[i] = 1;
        whole.insert(e, f);
    }
    let mut steps = Vec::new();
    // Depth-first, lower half first, so the series comes out bottom to top.
    let mut stack = vec![Section { lower: EchelonBasis::new(m.dim()), top: whole }];
    while let Some(section) = stack.pop() {
        if section.dim() == 0 {
            continue;
        }
        let factor = section.action(m)?;
        match find_split(&factor, &mut rng, tries)? {
            Outcome::Irreducible(certificate) => steps.push(SeriesStep { section, factor, certificate }),
            Outcome::Split(sub) => {
                let (low, high) = section.split(&sub, f);
                stack.push(high);
                stack.push(low);
            }
        }
    }
    Ok(CompositionSeries { steps })
}

/// Composition factors with multiplicities; `Σ dim·mult = dim M`.
pub fn composition_factors(m: &GModule, seed: u64) -> Result<Vec<CompositionFactor>, MeatAxeError> {
    composition_series(m, seed)?.factors()
}

/// Spins `v` recording `(source index, generator)` for every new basis vector.
fn spin_recipe(m: &GModule, v: &[Elem]) -> (Mat, Vec<(usize, usize)>) {
    let f = m.field();
    let mut ech = EchelonBasis::new(m.dim());
    let mut basis = vec![v.to_vec()];
    let mut recipe = Vec::new();
    ech.insert(v.to_vec(), f);
    let mut i = 0;
    while i < basis.len() && basis.len() < m.dim() {
        for (j, g) in m.gens().iter().enumerate() {
            let w = vec_mat(&basis[i], g, f);
            if ech.insert(w.clone(), f) {
                basis.push(w);
                recipe.push((i, j));
            }
        }
        i += 1;
    }
    (Mat::from_rows(&basis), recipe)
}

fn follow_recipe(m: &GModule, v: &[Elem], recipe: &[(usize, usize)]) -> Mat {
    let mut basis = vec![v.to_vec()];
    for &(i, j) in recipe {
        basis.push(vec_mat(&basis[i], &m.gens()[j], m.field()));
    }
    Mat::from_rows(&basis)
}

/// Isomorphism test for an irreducible `a` (with its certificate) against `b`.
///
/// A module isomorphism maps `ker p(A)` on `a` onto `ker p(A)` on `b`; the
/// spin of a kernel vector of `a` is matched against the same words applied
/// to every kernel vector of `b`, up to scalars.
pub fn isomorphic(a: &GModule, cert: &Certificate, b: &GModule) -> Result<bool, MeatAxeError> {
    if a.field() != b.field() {
        return Err(MeatAxeError::FieldMismatch);
    }
    if a.ngens() != b.ngens() {
        return Err(MeatAxeError::GeneratorCount { left: a.ngens(), right: b.ngens() });
    }
    if a.dim() != b.dim() {
        return Ok(false);
    }
    let f = a.field();
    let ka = cert.kernel(a);
    let kb = cert.kernel(b);
    if ka.rows() != kb.rows() || ka.rows() == 0 {
        return Ok(false);
    }
    let (ba, recipe) = spin_recipe(a, ka.row(0));
    if ba.rows() != a.dim() {
        return Err(MeatAxeError::Reducible);
    }
    let ba_inv = ba.inverse(f).expect("spun basis");
    let k = kb.rows();
    let q = f.order() as usize;
    // Coefficient vectors whose first non-zero entry is 1.
    for code in 1..q.pow(k as u32) {
        let coeffs: Vec<Elem> = (0..k).map(|i| ((code / q.pow(i as u32)) % q) as Elem).collect();
        if coeffs.iter().rev().find(|&&c| c != 0) != Some(&1) {
            continue;
        }
        let mut v = vec![0; b.dim()];
        for (i, &c) in coeffs.iter().enumerate() {
            for (x, &y) in v.iter_mut().zip(kb.row(i)) {
                *x = f.add(*x, f.mul(c, y));
            }
        }
        let bb = follow_recipe(b, &v, &recipe);
        if bb.det(f) == 0 {
            continue;
        }
        let phi = ba_inv.mul(&bb, f);
        if a.gens().iter().zip(b.gens()).all(|(ga, gb)| ga.mul(&phi, f) == phi.mul(gb, f)) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::{permutation_module, symmetric_group_generators};

    #[test]
    fn permutation_module_s5() {
        let f = FiniteField::gf3();
        let m = permutation_module(5, &symmetric_group_generators(5), &f).unwrap();
        let series = composition_series(&m, DEFAULT_SEED).unwrap();
        series.verify(&m).unwrap();
        let mut dims: Vec<usize> = series.steps.iter().map(|s| s.factor.dim()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 4]);
    }

    #[test]
    fn no_generators_split_completely() {
        let f = FiniteField::gf3();
        let m = GModule::new(f, 3, Vec::new()).unwrap();
        let fs = composition_factors(&m, 1).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!((fs[0].dim(), fs[0].multiplicity), (1, 3));
    }
}
