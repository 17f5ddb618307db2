use rank3_core::linalg::{vec_mat, EchelonBasis, Mat};
use rank3_core::{Elem, FiniteField};

use crate::MeatAxeError;

/// A matrix representation: one invertible matrix per abstract generator,
/// acting on row vectors from the right.
#[derive(Clone, Debug, PartialEq)]
pub struct GModule {
    field: FiniteField,
    dim: usize,
    gens: Vec<Mat>,
}

impl GModule {
    pub fn new(field: FiniteField, dim: usize, gens: Vec<Mat>) -> Result<Self, MeatAxeError> {
        for (index, g) in gens.iter().enumerate() {
            if g.rows() != dim || g.cols() != dim {
                return Err(MeatAxeError::Dimension { index, dim });
            }
            if dim > 0 && g.det(&field) == 0 {
                return Err(MeatAxeError::Singular(index));
            }
        }
        Ok(GModule { field, dim, gens })
    }

    /// The one-dimensional trivial module.
    pub fn trivial(field: FiniteField, ngens: usize) -> Self {
        GModule { field, dim: 1, gens: vec![Mat::identity(1); ngens] }
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
    pub fn ngens(&self) -> usize {
        self.gens.len()
    }

    /// Contragredient module, `g ↦ g⁻ᵀ`.
    pub fn dual(&self) -> GModule {
        let gens = self.gens.iter().map(|g| g.inverse(&self.field).expect("invertible").transpose()).collect();
        GModule { field: self.field.clone(), dim: self.dim, gens }
    }

    /// The transposed generators; submodules of this are annihilators of
    /// submodules of `self`.
    pub fn transposed(&self) -> GModule {
        GModule { field: self.field.clone(), dim: self.dim, gens: self.gens.iter().map(Mat::transpose).collect() }
    }

    /// Smallest submodule containing `seeds`.
    pub fn spin(&self, seeds: &[Vec<Elem>]) -> EchelonBasis {
        let f = &self.field;
        let mut basis = EchelonBasis::new(self.dim);
        let mut queue: Vec<Vec<Elem>> = Vec::new();
        for s in seeds {
            if basis.insert(s.clone(), f) {
                queue.push(s.clone());
            }
        }
        let mut i = 0;
        while i < queue.len() && basis.rank() < self.dim {
            for g in &self.gens {
                let w = vec_mat(&queue[i], g, f);
                if basis.insert(w.clone(), f) {
                    queue.push(w);
                }
            }
            i += 1;
        }
        basis
    }

    /// Whether the span of `basis` is closed under every generator.
    pub fn is_invariant(&self, basis: &EchelonBasis) -> Result<(), MeatAxeError> {
        for (j, g) in self.gens.iter().enumerate() {
            for r in basis.rows() {
                if !basis.contains(&vec_mat(r, g, &self.field), &self.field) {
                    return Err(MeatAxeError::NotInvariant(j));
                }
            }
        }
        Ok(())
    }

    /// Action on an invariant subspace, in the coordinates of `basis`.
    pub fn submodule(&self, basis: &EchelonBasis) -> Result<GModule, MeatAxeError> {
        self.is_invariant(basis)?;
        let f = &self.field;
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let rows: Vec<Vec<Elem>> = basis.rows().iter().map(|r| basis.coordinates(&vec_mat(r, g, f))).collect();
                Mat::from_rows(&rows)
            })
            .collect();
        GModule::new(f.clone(), basis.rank(), gens)
    }

    /// Action on `V / basis`, with the non-pivot unit vectors as quotient basis.
    pub fn quotient(&self, basis: &EchelonBasis) -> Result<GModule, MeatAxeError> {
        self.is_invariant(basis)?;
        let f = &self.field;
        let free = basis.non_pivots();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let rows: Vec<Vec<Elem>> = free
                    .iter()
                    .map(|&c| {
                        let mut w = g.row(c).to_vec();
                        basis.reduce(&mut w, f);
                        free.iter().map(|&k| w[k]).collect()
                    })
                    .collect();
                Mat::from_rows(&rows)
            })
            .collect();
        GModule::new(f.clone(), free.len(), gens)
    }
}

/// Permutation module of `degree` points; `perms[i][x]` is the image of `x`
/// (0-based) under generator `i`, and `e_x · g = e_{g(x)}`.
pub fn permutation_module(degree: usize, perms: &[Vec<usize>], field: &FiniteField) -> Result<GModule, MeatAxeError> {
    let mut gens = Vec::with_capacity(perms.len());
    for (index, p) in perms.iter().enumerate() {
        let mut seen = vec![false; degree];
        if p.len() != degree || p.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
            return Err(MeatAxeError::BadPermutation { index, degree });
        }
        let mut m = Mat::zeros(degree, degree);
        for (x, &y) in p.iter().enumerate() {
            m.set(x, y, 1);
        }
        gens.push(m);
    }
    GModule::new(field.clone(), degree, gens)
}

/// `(0 1)` and `(0 1 … n−1)`, generating `Sₙ`.
pub fn symmetric_group_generators(n: usize) -> Vec<Vec<usize>> {
    let mut t: Vec<usize> = (0..n).collect();
    if n >= 2 {
        t.swap(0, 1);
    }
    let c = (0..n).map(|x| (x + 1) % n).collect();
    vec![t, c]
}

/// `M₁ ⊗ M₂` with generator `i` acting as `g₁ᵢ ⊗ g₂ᵢ`.
pub fn tensor_module(a: &GModule, b: &GModule) -> Result<GModule, MeatAxeError> {
    if a.field != b.field {
        return Err(MeatAxeError::FieldMismatch);
    }
    if a.ngens() != b.ngens() {
        return Err(MeatAxeError::GeneratorCount { left: a.ngens(), right: b.ngens() });
    }
    let gens = a.gens.iter().zip(&b.gens).map(|(g, h)| g.kron(h, &a.field)).collect();
    GModule::new(a.field.clone(), a.dim * b.dim, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_permutation() {
        let f = FiniteField::gf3();
        let m = permutation_module(4, &[vec![0, 1, 2, 3]], &f).unwrap();
        assert!(m.gens()[0].is_identity());
        assert!(permutation_module(3, &[vec![0, 0, 1]], &f).is_err());
    }

    #[test]
    fn sub_and_quotient_of_permutation_module() {
        let f = FiniteField::gf3();
        let m = permutation_module(5, &symmetric_group_generators(5), &f).unwrap();
        let ones = m.spin(&[vec![1; 5]]);
        assert_eq!(ones.rank(), 1);
        let sum_zero = m.spin(&[vec![1, 2, 0, 0, 0]]);
        assert_eq!(sum_zero.rank(), 4);
        assert_eq!(m.submodule(&sum_zero).unwrap().dim(), 4);
        assert_eq!(m.quotient(&ones).unwrap().dim(), 4);
        let line = m.spin(&[vec![1, 0, 0, 0, 0]]);
        assert_eq!(line.rank(), 5);
    }
}
