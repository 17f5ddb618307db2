use proptest::prelude::*;
use rank3_core::constructions::symplectic_lambda2_module;
use rank3_core::linalg::{vec_mat, Mat};
use rank3_core::orbit::orbits_on_type;
use rank3_core::{Elem, FiniteField, MatrixGroup, QuadraticSpace, Sign};
use rank3_meataxe::*;

fn gf3() -> FiniteField {
    FiniteField::gf3()
}

fn s8_tensor_square() -> (GModule, GModule) {
    let u = permutation_module(8, &symmetric_group_generators(8), &gf3()).unwrap();
    let t = tensor_module(&u, &u).unwrap();
    (u, t)
}

fn sorted_dims(fs: &[CompositionFactor]) -> Vec<(usize, usize)> {
    let mut v: Vec<(usize, usize)> = fs.iter().map(|c| (c.dim(), c.multiplicity)).collect();
    v.sort();
    v
}

fn thirteen() -> GModule {
    let (_, t) = s8_tensor_square();
    let fs = composition_factors(&t, DEFAULT_SEED).unwrap();
    fs.into_iter().find(|c| c.dim() == 13).expect("a 13-dimensional factor").module
}

#[test]
fn permutation_modules_split_as_trivial_plus_deleted() {
    // 3 ∤ n: the all-ones line and the sum-zero hyperplane are complementary submodules
    for n in [5usize, 8] {
        let m = permutation_module(n, &symmetric_group_generators(n), &gf3()).unwrap();
        let ones = m.spin(&[vec![1; n]]);
        let mut diff = vec![0; n];
        diff[0] = 1;
        diff[1] = 2;
        let sum_zero = m.spin(&[diff]);
        assert_eq!((ones.rank(), sum_zero.rank()), (1, n - 1));
        assert!(is_irreducible(&m.submodule(&sum_zero).unwrap(), 7).unwrap());
        let fs = composition_factors(&m, DEFAULT_SEED).unwrap();
        assert_eq!(sorted_dims(&fs), vec![(1, 1), (n - 1, 1)], "n={n}");
    }
}

#[test]
fn tensor_product_definition() {
    let (u, t) = s8_tensor_square();
    assert_eq!(t.dim(), 64);
    let f = gf3();
    for (g, tg) in u.gens().iter().zip(t.gens()) {
        for i in 0..8 {
            for j in 0..8 {
                let mut ei = vec![0; 8];
                ei[i] = 1;
                let mut ej = vec![0; 8];
                ej[j] = 1;
                let mut eij = vec![0; 64];
                eij[i * 8 + j] = 1;
                let lhs = vec_mat(&eij, tg, &f);
                let (a, b) = (vec_mat(&ei, g, &f), vec_mat(&ej, g, &f));
                let rhs: Vec<Elem> =
                    a.iter().flat_map(|&x| b.iter().map(|&y| f.mul(x, y)).collect::<Vec<_>>()).collect();
                assert_eq!(lhs, rhs);
            }
        }
    }
    let triv = GModule::trivial(f, 2);
    assert_eq!(tensor_module(&u, &triv).unwrap().gens(), u.gens());
    let one_gen = GModule::trivial(gf3(), 1);
    assert!(matches!(tensor_module(&u, &one_gen), Err(MeatAxeError::GeneratorCount { .. })));
}

#[test]
fn tensor_square_of_s8_permutation_module() {
    let (_, t) = s8_tensor_square();
    let series = composition_series(&t, DEFAULT_SEED).unwrap();
    series.verify(&t).unwrap();
    let fs = series.factors().unwrap();
    let total: usize = fs.iter().map(|c| c.dim() * c.multiplicity).sum();
    assert_eq!(total, 64);
    assert!(fs.iter().any(|c| c.dim() == 13));
    // (1+7)⊗(1+7) = 1 + 7 + 7 + S²(7) + ∧²(7); S²(7) = 1 + 7 + 20 and the
    // Specht module of (6,2) has factors 13 and 7 in characteristic 3
    assert_eq!(sorted_dims(&fs), vec![(1, 2), (7, 4), (13, 1), (21, 1)]);
}

#[test]
fn seeds_fix_order_and_not_multiset() {
    let (_, t) = s8_tensor_square();
    let order =
        |seed| -> Vec<usize> { composition_series(&t, seed).unwrap().steps.iter().map(|s| s.factor.dim()).collect() };
    assert_eq!(order(11), order(11));
    let reference = sorted_dims(&composition_factors(&t, 1).unwrap());
    for seed in 2..=5 {
        assert_eq!(sorted_dims(&composition_factors(&t, seed).unwrap()), reference, "seed {seed}");
    }
}

#[test]
fn irreducible_input_is_its_own_factor() {
    let v = thirteen();
    let fs = composition_factors(&v, 3).unwrap();
    assert_eq!(fs.len(), 1);
    assert_eq!((fs[0].dim(), fs[0].multiplicity), (13, 1));
    assert!(isomorphic(&fs[0].module, &fs[0].certificate, &v).unwrap());
}

#[test]
fn isomorphism_detects_conjugate_copies() {
    let v = thirteen();
    let f = gf3();
    let fs = composition_factors(&v, 5).unwrap();
    // conjugate by an invertible upper-triangular matrix
    let mut p = Mat::identity(13);
    for i in 0..12 {
        p.set(i, i + 1, 1);
    }
    let pinv = p.inverse(&f).unwrap();
    let gens = v.gens().iter().map(|g| pinv.mul(g, &f).mul(&p, &f)).collect();
    let w = GModule::new(f.clone(), 13, gens).unwrap();
    assert!(isomorphic(&fs[0].module, &fs[0].certificate, &w).unwrap());
    // the sign twist: both generators are odd, and (6,2) is not Mullineux-fixed
    let sign = [f.neg(1), f.neg(1)];
    let twisted = v.gens().iter().zip(sign).map(|(g, s)| g.scale(s, &f)).collect();
    let w = GModule::new(f, 13, twisted).unwrap();
    assert!(!isomorphic(&fs[0].module, &fs[0].certificate, &w).unwrap());
}

#[test]
fn invariant_form_of_thirteen() {
    let v = thirteen();
    let f = gf3();
    let space = invariant_forms(&v).unwrap();
    assert_eq!(space.all.len(), 1, "Schur: a unique form up to scalar");
    assert_eq!(space.symmetric.len(), 1);
    assert!(space.alternating.is_empty());
    let b = invariant_bilinear_form(&v).unwrap();
    assert!(b.is_symmetric() && b.det(&f) != 0);
    for g in v.gens() {
        assert_eq!(g.mul(&b, &f).mul(&g.transpose(), &f), b);
    }
    // the contragredient twin carries B⁻¹ up to a scalar
    let bd = invariant_bilinear_form(&v.dual()).unwrap();
    let binv = b.inverse(&f).unwrap();
    assert!(f.elements().skip(1).any(|c| binv.scale(c, &f) == bd));
}

/// Size of the orbit of the vector `x` (not the point `⟨x⟩`).
fn vector_orbit_len(gens: &[Mat], x: &[Elem], f: &FiniteField) -> usize {
    let mut seen = std::collections::HashSet::from([x.to_vec()]);
    let mut queue = vec![x.to_vec()];
    while let Some(v) = queue.pop() {
        for g in gens {
            let w = vec_mat(&v, g, f);
            if seen.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    seen.len()
}

#[test]
fn thirteen_has_two_vector_orbits_of_315() {
    let v = thirteen();
    let f = gf3();
    let b = invariant_bilinear_form(&v).unwrap();
    let space = QuadraticSpace::new(f.clone(), b).unwrap();
    let group = MatrixGroup::new(f.clone(), 13, v.gens().to_vec()).unwrap();
    let mut regular = Vec::new();
    let mut doubled = Vec::new();
    for xi in [Sign::Plus, Sign::Minus] {
        for r in orbits_on_type(&space, &group, xi).unwrap() {
            if r.orbit_size != 315 {
                continue;
            }
            // ⟨x⟩ has 315 images; x has 315 or 630 depending on whether −x ∈ xM
            match vector_orbit_len(v.gens(), &r.base, &f) {
                315 => regular.push((xi, r.c, r.d)),
                630 => doubled.push((xi, r.c, r.d)),
                n => panic!("vector orbit of {n}"),
            }
        }
    }
    regular.sort();
    assert_eq!(regular, vec![(Sign::Plus, 212, 102), (Sign::Minus, 230, 84)]);
    assert_eq!(doubled, vec![(Sign::Minus, 194, 120)]);
}

#[test]
fn symplectic_lambda2_is_irreducible() {
    let case = symplectic_lambda2_module().unwrap();
    let m = GModule::new(case.group.field().clone(), case.group.dim(), case.group.gens().to_vec()).unwrap();
    assert_eq!(m.dim(), 13);
    assert!(is_irreducible(&m, DEFAULT_SEED).unwrap());
    let b = invariant_bilinear_form(&m).unwrap();
    assert!(b.det(m.field()) != 0);
}

/// Companion matrix of a monic cubic `x³ + c₂x² + c₁x + c₀` over GF(3)
/// whose roots have order 13.
fn order13_companion() -> Mat {
    let f = gf3();
    for code in 0..27u32 {
        let c = [code % 3, (code / 3) % 3, code / 9];
        let has_root = f.elements().any(|x| {
            let x2 = f.mul(x, x);
            f.add(f.add(f.mul(x2, x), f.mul(c[2], x2)), f.add(f.mul(c[1], x), c[0])) == 0
        });
        if has_root {
            continue;
        }
        let m = Mat::from_rows(&[vec![0, 1, 0], vec![0, 0, 1], vec![f.neg(c[0]), f.neg(c[1]), f.neg(c[2])]]);
        if m.pow(13, &f).is_identity() {
            return m;
        }
    }
    unreachable!("x¹³ − 1 has cubic factors over GF(3)")
}

#[test]
fn cyclic_thirteen_is_irreducible_but_not_self_dual() {
    // 3 has order 3 mod 13 and −1 ∉ ⟨3⟩, so the module is not self-dual
    let m = GModule::new(gf3(), 3, vec![order13_companion()]).unwrap();
    assert!(is_irreducible(&m, DEFAULT_SEED).unwrap());
    assert_eq!(invariant_bilinear_form(&m), Err(MeatAxeError::NotSelfDual));
    let fs = composition_factors(&m, 9).unwrap();
    assert_eq!(sorted_dims(&fs), vec![(3, 1)]);
}

#[test]
fn dimension_cap() {
    let m = GModule::new(gf3(), 129, vec![Mat::identity(129)]).unwrap();
    assert!(matches!(composition_series(&m, 1), Err(MeatAxeError::TooLarge { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_permutation_modules(n in 2usize..9, seed in 0u64..1000, swaps in proptest::collection::vec((0usize..9, 0usize..9), 1..6)) {
        // generators: an n-cycle and a random product of transpositions
        let mut p: Vec<usize> = (0..n).collect();
        for (a, b) in swaps {
            p.swap(a % n, b % n);
        }
        let c: Vec<usize> = (0..n).map(|x| (x + 1) % n).collect();
        let m = permutation_module(n, &[c, p], &gf3()).unwrap();
        let series = composition_series(&m, seed).unwrap();
        series.verify(&m).unwrap();
        let fs = series.factors().unwrap();
        prop_assert_eq!(fs.iter().map(|c| c.dim() * c.multiplicity).sum::<usize>(), n);
        prop_assert!(fs.iter().any(|c| c.dim() == 1));
    }
}
