//! Invariant bilinear forms as the solution space of `g·B·gᵀ = B`.

use rank3_core::linalg::Mat;
use rank3_core::{Elem, FiniteField};

use crate::module::GModule;
use crate::MeatAxeError;

/// Largest dimension for the `d²`-unknown linear system.
pub const MAX_FORM_DIM: usize = 32;

/// Bases of the invariant forms, split by symmetry.
#[derive(Clone, Debug)]
pub struct FormSpace {
    pub all: Vec<Mat>,
    pub symmetric: Vec<Mat>,
    pub alternating: Vec<Mat>,
}

fn unflatten(row: &[Elem], d: usize) -> Mat {
    Mat::from_flat(d, d, row.to_vec())
}

fn solve(constraints: &Mat, d: usize, f: &FiniteField) -> Vec<Mat> {
    let k = constraints.right_kernel(f);
    (0..k.rows()).map(|i| unflatten(k.row(i), d)).collect()
}

/// `vec(g·B·gᵀ) = (g ⊗ g)·vec(B)` with row-major `vec`.
pub fn invariant_forms(m: &GModule) -> Result<FormSpace, MeatAxeError> {
    let d = m.dim();
    if d > MAX_FORM_DIM {
        return Err(MeatAxeError::TooLarge { dim: d, limit: MAX_FORM_DIM });
    }
    let f = m.field();
    let n = d * d;
    let mut base = Mat::empty(n);
    let id = Mat::identity(n);
    for g in m.gens() {
        let k = g.kron(g, f).sub(&id, f);
        for r in 0..n {
            base.push_row(k.row(r));
        }
    }
    let mut sym = base.clone();
    let mut alt = base.clone();
    let one = 1;
    let minus = f.neg(one);
    for i in 0..d {
        for j in i..d {
            let mut s = vec![0; n];
            let mut a = vec![0; n];
            s[i * d + j] = f.add(s[i * d + j], one);
            s[j * d + i] = f.add(s[j * d + i], minus);
            a[i * d + j] = f.add(a[i * d + j], one);
            a[j * d + i] = f.add(a[j * d + i], one);
            sym.push_row(&s);
            alt.push_row(&a);
        }
    }
    Ok(FormSpace { all: solve(&base, d, f), symmetric: solve(&sym, d, f), alternating: solve(&alt, d, f) })
}

/// A non-zero symmetric invariant form, preferring a non-degenerate basis
/// element; for an absolutely irreducible module it is unique up to scalar.
pub fn invariant_bilinear_form(m: &GModule) -> Result<Mat, MeatAxeError> {
    let space = invariant_forms(m)?;
    let f = m.field();
    if let Some(b) = space.symmetric.iter().find(|b| b.det(f) != 0).or(space.symmetric.first()) {
        return Ok(b.clone());
    }
    if !space.alternating.is_empty() {
        return Err(MeatAxeError::AlternatingOnly);
    }
    Err(MeatAxeError::NotSelfDual)
}
