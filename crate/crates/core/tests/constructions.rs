use std::collections::BTreeSet;

use rank3_core::constructions::*;
use rank3_core::groups::omega_order;
use rank3_core::higman::Eigen;
use rank3_core::orbit::{cd_parameters, orbits_on_type, OrbitReport};
use rank3_core::{FiniteField, Mat, Sign, SquareClass};

fn sizes(reports: &[OrbitReport]) -> Vec<u64> {
    let mut v: Vec<u64> = reports.iter().map(|r| r.orbit_size).collect();
    v.sort_unstable();
    v
}

fn cd_of(case: &ConstructedCase, name: &str) -> OrbitReport {
    let b = case.base(name).unwrap_or_else(|| panic!("{}: no base point {name}", case.label));
    cd_parameters(&case.space, &case.group, &b.vector).unwrap()
}

#[test]
fn every_label_builds_and_validates() {
    for label in labels() {
        let case = build(&label).unwrap_or_else(|e| panic!("{label}: {e}"));
        assert_eq!(case.label, label);
        assert!(!case.citation.is_empty());
        assert!(!case.base_points.is_empty());
    }
    assert!(build("wreath-n4").is_err());
    assert!(build("nonsense").is_err());
}

#[test]
fn wreath_orbit_sizes() {
    let c5 = build("wreath-n5").unwrap();
    assert_eq!(sizes(&orbits_on_type(&c5.space, &c5.group, Sign::Plus).unwrap()), vec![5, 40]);
    assert_eq!(sizes(&orbits_on_type(&c5.space, &c5.group, Sign::Minus).unwrap()), vec![16, 20]);
    let c7 = build("wreath-n7").unwrap();
    assert_eq!(sizes(&orbits_on_type(&c7.space, &c7.group, Sign::Plus).unwrap()), vec![42, 336]);
}

#[test]
fn wreath_cd_closed_forms() {
    for n in [5i64, 7, 9, 11, 13] {
        let case = build(&format!("wreath-n{n}")).unwrap();
        let a = cd_of(&case, "x1");
        assert_eq!((a.c as i64, a.d as i64), (0, n - 1), "n={n}");
        let b = cd_of(&case, "x1+x2");
        assert_eq!((b.c as i64, b.d as i64), (4 * n - 8, n * n - 5 * n + 7), "n={n}");
        // x1 is + exactly when m = (n−1)/2 is even
        let m = (n - 1) / 2;
        assert_eq!(a.xi, Some(if m % 2 == 0 { Sign::Plus } else { Sign::Minus }));
    }
}

#[test]
fn wreath_equation_one_cases() {
    let mut holds = BTreeSet::new();
    for n in [5usize, 7] {
        let case = build(&format!("wreath-n{n}")).unwrap();
        for xi in [Sign::Plus, Sign::Minus] {
            let reports = orbits_on_type(&case.space, &case.group, xi).unwrap();
            for r in [Eigen::S, Eigen::T] {
                if reports.iter().all(|rep| rep.verdicts.unwrap().eq1(r)) {
                    holds.insert((n, xi.symbol(), r.name()));
                }
            }
        }
    }
    let want: BTreeSet<_> = [(5, '+', "t"), (7, '+', "t"), (5, '-', "s")].into_iter().collect();
    assert_eq!(holds, want);
}

#[test]
fn parabolic_n7_alpha1_orbits() {
    let case = build("parabolic-n7-a1").unwrap();
    let plus = orbits_on_type(&case.space, &case.group, Sign::Plus).unwrap();
    let minus = orbits_on_type(&case.space, &case.group, Sign::Minus).unwrap();
    assert_eq!(plus.len(), 2);
    assert_eq!(minus.len(), 2);
    assert_eq!(sizes(&plus), vec![135, 243]);
    assert_eq!(plus.iter().map(|r| r.orbit_size).sum::<u64>(), 378);
    assert_eq!(minus.iter().map(|r| r.orbit_size).sum::<u64>(), 351);
}

#[test]
fn parabolic_other_ranks_have_two_orbits_per_type() {
    for label in ["parabolic-n5-a1", "parabolic-n5-a2", "parabolic-n7-a2", "parabolic-n7-a3", "parabolic-n9-a1"] {
        let case = build(label).unwrap();
        for xi in [Sign::Plus, Sign::Minus] {
            let reps = orbits_on_type(&case.space, &case.group, xi).unwrap();
            assert!(reps.len() <= 2, "{label} {xi:?}: {} orbits", reps.len());
            // the orbit through z is always one of them
            let m = (case.space.dim() / 2) as u32;
            for rep in &reps {
                assert!(rep.verdicts.unwrap().eq2, "{label}: c − 2d = ξ3^{m} − 1 fails");
            }
        }
    }
}

#[test]
fn field_extension_orbits() {
    let case = build("fieldext-n9").unwrap();
    let plus = orbits_on_type(&case.space, &case.group, Sign::Plus).unwrap();
    let minus = orbits_on_type(&case.space, &case.group, Sign::Minus).unwrap();
    assert_eq!(sizes(&plus), vec![1053, 1134, 1134]);
    assert_eq!(sizes(&minus), vec![1053, 1053, 1134]);
    for r in plus.iter().chain(&minus) {
        let x = r.xi.unwrap().as_i64();
        assert_eq!(r.c as i64 - 2 * r.d as i64, x * 81 - 1);
    }
    // the pinned base points land in distinct orbits of the expected sizes
    let mut got: Vec<(String, u64)> =
        case.base_points.iter().map(|b| (b.name.clone(), cd_of(&case, &b.name).orbit_size)).collect();
    got.sort();
    let want = [("x1", 1053), ("x2", 1053), ("x3", 1134), ("y1", 1134), ("y2", 1134), ("y3", 1053)];
    assert_eq!(got, want.map(|(a, b)| (a.to_string(), b)).to_vec());
}

#[test]
fn blow_down_is_compatible_with_the_trace_form() {
    let big = FiniteField::new(3, 3).unwrap();
    let bd = BlowDown::new(big.clone()).unwrap();
    assert_eq!(bd.trace_form_discriminant(), SquareClass::Square);
    // T(xy) in coordinates equals the Gram pairing of coordinates
    let g = bd.gram(&Mat::identity(1));
    for x in big.elements() {
        for y in big.elements().step_by(5) {
            let (cx, cy) = (bd.coords(x), bd.coords(y));
            let mut s = 0;
            for i in 0..3 {
                for j in 0..3 {
                    s = bd.small.add(s, bd.small.mul(cx[i], bd.small.mul(g.get(i, j), cy[j])));
                }
            }
            assert_eq!(s, big.trace(big.mul(x, y)));
        }
    }
    // the Frobenius shift permutes the normal basis
    for (k, &z) in bd.normal_basis.iter().enumerate() {
        assert_eq!(big.frobenius(z), bd.normal_basis[(k + 1) % 3]);
    }
}

#[test]
fn deleted_module_matches_closed_forms() {
    for n in [10usize, 14, 15, 16] {
        let case = build(&format!("deleted-n{n}")).unwrap();
        for which in ['v', 'w'] {
            let r = cd_of(&case, &which.to_string());
            let (orbit, c, d) = deleted_module_closed_forms(n as i64, which).unwrap();
            assert_eq!((r.orbit_size as i64, r.c as i64, r.d as i64), (orbit, c, d), "n={n} {which}");
        }
    }
}

#[test]
fn deleted_module_pinned_values() {
    for (n, c, d) in [(10, 438, 191), (14, 1970, 1032), (15, 2618, 1476), (16, 3396, 2063)] {
        let case = build(&format!("deleted-n{n}")).unwrap();
        let r = cd_of(&case, "w");
        assert_eq!((r.c, r.d), (c, d), "n={n}");
    }
    let r = cd_of(&build("deleted-n10").unwrap(), "v");
    assert_eq!((r.orbit_size, r.c, r.d), (45, 16, 28));
}

#[test]
fn deleted_module_dimensions() {
    for n in 8..=16usize {
        let case = build(&format!("deleted-n{n}")).unwrap();
        let want = if n % 3 == 0 { n - 2 } else { n - 1 };
        assert_eq!(case.space.dim(), want, "n={n}");
    }
}

#[test]
fn wedge_square_of_omega7() {
    let case = build("wedge-omega7").unwrap();
    assert_eq!(case.space.dim(), 21);
    let mut got: Vec<(u64, u64)> =
        ["plus-xi", "minus-xi"].iter().map(|n| cd_of(&case, n)).map(|r| (r.c, r.d)).collect();
    got.sort();
    assert_eq!(got, vec![(13040, 9072), (26324, 17901)]);
}

#[test]
fn symmetric_square_quotient_of_omega7() {
    let case = build("sym-omega7").unwrap();
    assert_eq!(case.space.dim(), 27);
    let axis = cd_of(&case, "axis-plus-xi");
    assert_eq!((axis.c, axis.d), (13850, 8262));
    let minus = cd_of(&case, "minus-xi");
    assert_eq!((minus.c, minus.d), (26324, 17901));
    assert_ne!(axis.xi, minus.xi);
    // e1⊗e1 + f1⊗f1 is fixed projectively by (O₂⁺ × O₅) ∩ Ω₇, of order 103680
    let plus = cd_of(&case, "plus-xi");
    assert_eq!(1 + plus.c + plus.d, (omega_order(7, 3, None) / 103680) as u64);
    assert_eq!((plus.c, plus.d), (26081, 18144));
}

fn tensor_index(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}

/// Embeds a vector of `S²N` into `N⊗N`.
fn sym_to_tensor(n: usize, v: &[u32], f: &FiniteField) -> Vec<u32> {
    let mut t = vec![0; n * n];
    for (c, &(i, j)) in sym_pairs(n).iter().enumerate() {
        t[tensor_index(n, i, j)] = f.add(t[tensor_index(n, i, j)], v[c]);
        if i != j {
            t[tensor_index(n, j, i)] = f.add(t[tensor_index(n, j, i)], v[c]);
        }
    }
    t
}

fn wedge_to_tensor(n: usize, v: &[u32], f: &FiniteField) -> Vec<u32> {
    let mut t = vec![0; n * n];
    for (c, &(i, j)) in wedge_pairs(n).iter().enumerate() {
        t[tensor_index(n, i, j)] = f.add(t[tensor_index(n, i, j)], v[c]);
        t[tensor_index(n, j, i)] = f.sub(t[tensor_index(n, j, i)], v[c]);
    }
    t
}

#[test]
fn sym_and_wedge_actions_agree_with_tensor_square() {
    use rank3_core::linalg::vec_mat;
    let (f, b, gens) = sp6_natural();
    let n = 6;
    for g in gens.iter().take(6) {
        let gg = g.kron(g, &f);
        let sm = sym_matrix(&f, g);
        for r in 0..sm.rows() {
            let mut e = vec![0; sm.rows()];
            e[r] = 1;
            assert_eq!(vec_mat(&sym_to_tensor(n, &e, &f), &gg, &f), sym_to_tensor(n, sm.row(r), &f));
        }
        let wm = wedge_matrix(&f, g);
        for r in 0..wm.rows() {
            let mut e = vec![0; wm.rows()];
            e[r] = 1;
            assert_eq!(vec_mat(&wedge_to_tensor(n, &e, &f), &gg, &f), wedge_to_tensor(n, wm.row(r), &f));
        }
    }
    // the S² Gram matrix is the restriction of B⊗B
    let bb = b.kron(&b, &f);
    let sg = sym_gram(&f, &b);
    let pairs = sym_pairs(n);
    for a in 0..pairs.len() {
        for c in 0..pairs.len() {
            let (mut ea, mut ec) = (vec![0; pairs.len()], vec![0; pairs.len()]);
            ea[a] = 1;
            ec[c] = 1;
            let (ta, tc) = (sym_to_tensor(n, &ea, &f), sym_to_tensor(n, &ec, &f));
            assert_eq!(rank3_core::linalg::dot(&vec_mat(&ta, &bb, &f), &tc, &f), sg.get(a, c));
        }
    }
}

#[test]
fn symplectic_lambda2_orbits() {
    let case = build("sp6-lambda2").unwrap();
    assert_eq!(case.space.dim(), 13);
    let minus = orbits_on_type(&case.space, &case.group, Sign::Minus).unwrap();
    let plus = orbits_on_type(&case.space, &case.group, Sign::Plus).unwrap();
    assert_eq!(minus.len(), 1);
    assert_eq!(plus.len(), 2);
    assert_eq!(minus[0].orbit_size, 265356);
    assert_eq!(plus.iter().map(|r| r.orbit_size).sum::<u64>(), 266085);
}

#[test]
fn bound_cases_violate_the_orbit_size_bound() {
    for (label, m) in [("tensor-3x5", 7u32), ("tensorwreath-n25", 12), ("imprimitive-o3wr3", 4)] {
        let case = build(label).unwrap();
        assert_eq!(case.space.dim(), 2 * m as usize + 1);
        let threshold = (3u64.pow(m) + 1) / 2;
        for b in &case.base_points {
            let r = cd_of(&case, &b.name);
            assert!(r.orbit_size < threshold, "{label}/{}: orbit {} ≥ {threshold}", b.name, r.orbit_size);
            assert!(!r.verdicts.unwrap().eq4);
        }
    }
    let imp = build("imprimitive-o3wr3").unwrap();
    assert_eq!(cd_of(&imp, "x1").orbit_size, 9);
    assert_eq!(cd_of(&imp, "x1+x2").orbit_size, 18);
}

#[test]
fn orthogonal_sum_matches_three_dimensional_parameters() {
    let case = build("orthsum-7-3").unwrap();
    let r = cd_of(&case, "x1+x2");
    // Ω₃(3) on the 6 plus points of a 3-space: l = (3−1)(1+1) = 4, k = ½(3−1) = 1
    assert_eq!((r.orbit_size, r.c, r.d), (6, 4, 1));
}

#[test]
fn sp6_symmetric_square_small_orbits() {
    let case = build("sp6-sym").unwrap();
    assert_eq!(case.space.dim(), 21);
    let r = cd_of(&case, "minus-xi");
    assert_eq!((r.c, r.d), (26324, 17901));
}

#[test]
fn psl2_13_heart_orbits() {
    let case = build("l2-13-heart").unwrap();
    assert_eq!(case.space.dim(), 13);
    assert_eq!(case.group.order(10_000).unwrap(), 1092);
    // w is an eigenvector of the order-13 translation: orbit |P¹(13)| = 14
    let w = cd_of(&case, "w");
    assert_eq!((w.orbit_size, w.c, w.d), (14, 13, 0));
    let u = cd_of(&case, "u");
    assert_eq!((u.orbit_size, u.c, u.d), (1092, 734, 357));
    let v = u.verdicts.unwrap();
    assert!(!v.eq1(Eigen::S) && !v.eq1(Eigen::T));
}

#[test]
fn deleted_module_n9_orbit_counts() {
    let case = build("deleted-n9").unwrap();
    assert_eq!(case.space.dim(), 7);
    let tv = case.base("v").unwrap().expected.unwrap();
    let tw = case.base("w").unwrap().expected.unwrap();
    assert_ne!(tv, tw);
    let ov = orbits_on_type(&case.space, &case.group, tv).unwrap();
    let ow = orbits_on_type(&case.space, &case.group, tw).unwrap();
    assert_eq!((ov.len(), ow.len()), (2, 1));
    // ε₁+ε₂+ε₃+ε₄−ε₅ ≡ ε₁+…+ε₄−ε₅−…−ε₈ is the second representative of v's type
    let x = project_deleted(9, &[1, 1, 1, 1, 2, 2, 2, 2, 0]);
    assert_eq!(rank3_core::orbit::base_type(&case.space, &x).unwrap(), Some(tv));
    let orbit_v = rank3_core::orbit::orbit(&case.group, &case.base("v").unwrap().vector).unwrap();
    assert!(!orbit_v.contains(&x));
    for r in ov.iter().chain(&ow) {
        let v = r.verdicts.unwrap();
        assert!(v.eq1(Eigen::S) || v.eq1(Eigen::T), "{r:?}");
    }
}

/// Image of an ambient vector in the n = 9 deleted module (3 | 9, so the
/// all-ones line is factored out).
fn project_deleted(n: usize, x: &[u32]) -> Vec<u32> {
    let f = FiniteField::gf3();
    let rows: Vec<Vec<u32>> = (0..n - 1)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v[i + 1] = 2;
            v
        })
        .collect();
    let sub = Mat::from_rows(&rows);
    let rad = radical_of(&f, &Mat::identity(n), &sub);
    let sq = Subquotient::new(&f, sub, &rad).unwrap();
    let mut p = sq.project(x).unwrap();
    rank3_core::linalg::normalize_projective(&mut p, &f);
    p
}
