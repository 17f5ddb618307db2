//! Dense polynomials over a finite field (constant term first), the
//! characteristic polynomial of a matrix, and distinct-degree /
//! Cantor–Zassenhaus factorisation into irreducibles.

use rand::Rng;
use rank3_core::linalg::{vec_mat, EchelonBasis, Mat};
use rank3_core::{Elem, FiniteField};

pub type Poly = Vec<Elem>;

fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn degree(p: &[Elem]) -> usize {
    p.len().saturating_sub(1)
}

fn sub(a: &[Elem], b: &[Elem], f: &FiniteField) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in out.iter_mut().enumerate() {
        *x = f.sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0));
    }
    trim(out)
}

pub fn mul(a: &[Elem], b: &[Elem], f: &FiniteField) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Quotient and remainder; `b` must be non-zero.
pub fn divrem(a: &[Elem], b: &[Elem], f: &FiniteField) -> (Poly, Poly) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = f.inv(*b.last().expect("non-zero divisor"));
    let mut q = vec![0; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = f.mul(*r.last().unwrap(), lead_inv);
        q[shift] = c;
        for (i, &y) in b.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, y));
        }
        r = trim(r);
    }
    (trim(q), r)
}

fn rem(a: &[Elem], m: &[Elem], f: &FiniteField) -> Poly {
    divrem(a, m, f).1
}

fn monic(p: Poly, f: &FiniteField) -> Poly {
    match p.last() {
        Some(&c) if c != 1 => {
            let inv = f.inv(c);
            p.into_iter().map(|x| f.mul(x, inv)).collect()
        }
        _ => p,
    }
}

pub fn gcd(a: &[Elem], b: &[Elem], f: &FiniteField) -> Poly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b, f);
        a = b;
        b = r;
    }
    monic(a, f)
}

fn powmod(base: &[Elem], mut e: u64, m: &[Elem], f: &FiniteField) -> Poly {
    let mut acc: Poly = rem(&[1], m, f);
    let mut b = rem(base, m, f);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b, f), m, f);
        }
        b = rem(&mul(&b, &b, f), m, f);
        e >>= 1;
    }
    acc
}

/// Characteristic polynomial (monic) as the product of the relative minimal
/// polynomials of a Krylov decomposition `V = ⟨v₁⟩_A ⊕ ⟨v₂⟩_A ⊕ …` mod the
/// earlier pieces.
pub fn char_poly(a: &Mat, f: &FiniteField) -> Poly {
    let n = a.rows();
    let mut span = EchelonBasis::new(n);
    let mut result: Poly = vec![1];
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        if span.contains(&e, f) {
            continue;
        }
        // v, vA, vA², … reduced modulo the invariant subspace built so far
        let mut seq: Vec<Vec<Elem>> = Vec::new();
        let mut local = span.clone();
        let mut v = e;
        loop {
            let mut w = v.clone();
            span.reduce(&mut w, f);
            seq.push(w.clone());
            if !local.insert(w, f) {
                break;
            }
            v = vec_mat(&v, a, f);
        }
        // the unique dependency Σ cⱼ·seqⱼ = 0 with c_last = 1
        let rows = Mat::from_rows(&seq);
        let k = rows.left_kernel(f);
        let rel = k.row(k.rows() - 1).to_vec();
        result = mul(&result, &monic(trim(rel), f), f);
        span = local;
    }
    result
}

/// `x^(q^k)` modulo `m`, from `x^(q^(k−1))`.
fn frobenius_step(prev: &[Elem], q: u64, m: &[Elem], f: &FiniteField) -> Poly {
    powmod(prev, q, m, f)
}

/// Splits a squarefree product of irreducibles of degree `k` (odd `q`).
fn equal_degree<R: Rng>(g: Poly, k: usize, f: &FiniteField, rng: &mut R, out: &mut Vec<Poly>) {
    if degree(&g) == k {
        out.push(g);
        return;
    }
    let q = f.order() as u64;
    if q % 2 == 0 {
        // even characteristic is outside the supported fields; keep the product
        out.push(g);
        return;
    }
    loop {
        let a: Poly = trim((0..degree(&g)).map(|_| rng.random_range(0..f.order())).collect());
        if degree(&a) == 0 {
            continue;
        }
        // a^((q^k − 1)/2) = (a · a^q ⋯ a^(q^(k−1)))^((q − 1)/2)
        let mut t = rem(&[1], &g, f);
        let mut conj = rem(&a, &g, f);
        for _ in 0..k {
            t = rem(&mul(&t, &conj, f), &g, f);
            conj = powmod(&conj, q, &g, f);
        }
        let b = powmod(&t, (q - 1) / 2, &g, f);
        let h = gcd(&g, &sub(&b, &[1], f), f);
        if degree(&h) > 0 && degree(&h) < degree(&g) {
            let other = divrem(&g, &h, f).0;
            equal_degree(h, k, f, rng, out);
            equal_degree(monic(other, f), k, f, rng, out);
            return;
        }
    }
}

/// The distinct monic irreducible factors of `p`, by increasing degree.
pub fn irreducible_factors<R: Rng>(p: &[Elem], f: &FiniteField, rng: &mut R) -> Vec<Poly> {
    let q = f.order() as u64;
    let mut rest = monic(trim(p.to_vec()), f);
    let mut out = Vec::new();
    let x: Poly = vec![0, 1];
    let mut xq = rem(&x, &rest, f);
    let mut k = 0;
    while degree(&rest) > 0 {
        k += 1;
        xq = frobenius_step(&xq, q, &rest, f);
        let g = gcd(&rest, &sub(&xq, &x, f), f);
        if degree(&g) > 0 {
            // strip every power of the degree-k factors
            loop {
                let c = gcd(&rest, &g, f);
                if degree(&c) == 0 {
                    break;
                }
                rest = divrem(&rest, &c, f).0;
            }
            rest = monic(rest, f);
            xq = rem(&xq, &rest, f);
            let mut found = Vec::new();
            equal_degree(g, k, f, rng, &mut found);
            found.sort();
            out.extend(found);
        }
    }
    out
}
