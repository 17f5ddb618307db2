//! Bit-sliced GF(3) vectors of length ≤ 32.
//!
//! A vector is stored as two masks: bit `i` of `p` is set when coordinate `i`
//! equals 1, bit `i` of `n` when it equals 2 (= −1). That is two bits per
//! coordinate, and the pair packs into a single `u64` key for hashing.
//! Matrices are applied through per-chunk lookup tables (four coordinates per
//! chunk), so a product costs `⌈dim/4⌉` table reads and packed additions.

use crate::field::Elem;
use crate::linalg::Mat;

pub const MAX_PACKED_DIM: usize = 32;
const CHUNK: usize = 4;
const CHUNK_MASK: u32 = (1 << CHUNK) - 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct P3 {
    pub p: u32,
    pub n: u32,
}

impl P3 {
    pub const ZERO: P3 = P3 { p: 0, n: 0 };

    pub fn from_coords(v: &[Elem]) -> P3 {
        assert!(v.len() <= MAX_PACKED_DIM);
        let mut out = P3::ZERO;
        for (i, &x) in v.iter().enumerate() {
            match x % 3 {
                1 => out.p |= 1 << i,
                2 => out.n |= 1 << i,
                _ => {}
            }
        }
        out
    }

    pub fn to_coords(self, dim: usize) -> Vec<Elem> {
        (0..dim)
            .map(|i| {
                if self.p >> i & 1 == 1 {
                    1
                } else if self.n >> i & 1 == 1 {
                    2
                } else {
                    0
                }
            })
            .collect()
    }

    #[inline]
    pub fn key(self) -> u64 {
        (self.n as u64) << 32 | self.p as u64
    }

    #[inline]
    pub fn from_key(k: u64) -> P3 {
        P3 { p: k as u32, n: (k >> 32) as u32 }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.p | self.n == 0
    }

    #[inline]
    pub fn neg(self) -> P3 {
        P3 { p: self.n, n: self.p }
    }

    #[inline]
    pub fn add(self, o: P3) -> P3 {
        let za = !(self.p | self.n);
        let zb = !(o.p | o.n);
        P3 { p: (self.p & zb) | (o.p & za) | (self.n & o.n), n: (self.n & zb) | (o.n & za) | (self.p & o.p) }
    }

    #[inline]
    pub fn sub(self, o: P3) -> P3 {
        self.add(o.neg())
    }

    #[inline]
    pub fn scale(self, c: Elem) -> P3 {
        match c % 3 {
            0 => P3::ZERO,
            1 => self,
            _ => self.neg(),
        }
    }

    /// Projective representative: first nonzero coordinate equal to 1.
    #[inline]
    pub fn canonical(self) -> P3 {
        let support = self.p | self.n;
        if support & support.wrapping_neg() & self.n != 0 {
            self.neg()
        } else {
            self
        }
    }

    /// Standard dot product `Σ uᵢvᵢ` in GF(3).
    #[inline]
    pub fn dot(self, o: P3) -> Elem {
        let plus = (self.p & o.p).count_ones() + (self.n & o.n).count_ones();
        let minus = (self.p & o.n).count_ones() + (self.n & o.p).count_ones();
        ((plus + 3 * 32 - minus) % 3) as Elem
    }
}

/// A GF(3) matrix prepared for fast row-vector products.
#[derive(Clone, Debug)]
pub struct PackedMat {
    dim_in: usize,
    dim_out: usize,
    chunks: usize,
    table: Vec<P3>,
}

impl PackedMat {
    /// Builds lookup tables for `m` (entries must be GF(3) encodings).
    pub fn new(m: &Mat) -> PackedMat {
        assert!(m.rows() <= MAX_PACKED_DIM && m.cols() <= MAX_PACKED_DIM);
        let rows: Vec<P3> = (0..m.rows()).map(|r| P3::from_coords(m.row(r))).collect();
        let chunks = m.rows().div_ceil(CHUNK);
        let mut table = vec![P3::ZERO; chunks << (2 * CHUNK)];
        for c in 0..chunks {
            for idx in 0..1usize << (2 * CHUNK) {
                let (pbits, nbits) = (idx & CHUNK_MASK as usize, idx >> CHUNK);
                if pbits & nbits != 0 {
                    continue;
                }
                let mut acc = P3::ZERO;
                for j in 0..CHUNK {
                    let r = c * CHUNK + j;
                    if r >= rows.len() {
                        break;
                    }
                    if pbits >> j & 1 == 1 {
                        acc = acc.add(rows[r]);
                    } else if nbits >> j & 1 == 1 {
                        acc = acc.sub(rows[r]);
                    }
                }
                table[(c << (2 * CHUNK)) | idx] = acc;
            }
        }
        PackedMat { dim_in: m.rows(), dim_out: m.cols(), chunks, table }
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }
    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    /// `v · M`.
    #[inline]
    pub fn apply(&self, v: P3) -> P3 {
        let mut acc = P3::ZERO;
        for c in 0..self.chunks {
            let shift = c * CHUNK;
            let idx = ((v.p >> shift) & CHUNK_MASK) | (((v.n >> shift) & CHUNK_MASK) << CHUNK);
            acc = acc.add(self.table[(c << (2 * CHUNK)) | idx as usize]);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;
    use crate::linalg::vec_mat;

    #[test]
    fn add_table_exhaustive() {
        for a in 0..3u32 {
            for b in 0..3u32 {
                let s = P3::from_coords(&[a]).add(P3::from_coords(&[b]));
                assert_eq!(s.to_coords(1), vec![(a + b) % 3]);
                let d = P3::from_coords(&[a]).dot(P3::from_coords(&[b]));
                assert_eq!(d, a * b % 3);
            }
        }
    }

    #[test]
    fn canonical_leading_one() {
        let v = P3::from_coords(&[0, 2, 1, 2]);
        assert_eq!(v.canonical().to_coords(4), vec![0, 1, 2, 1]);
        let w = P3::from_coords(&[0, 1, 1]);
        assert_eq!(w.canonical(), w);
    }

    #[test]
    fn packed_matches_dense() {
        let f = FiniteField::gf3();
        let n = 11;
        let mut m = Mat::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                m.set(r, c, ((r * 7 + c * 5 + r * c) % 3) as u32);
            }
        }
        let pm = PackedMat::new(&m);
        for seed in 0..200u32 {
            let v: Vec<u32> = (0..n as u32).map(|i| (seed * 31 + i * i * 7 + seed * i) % 3).collect();
            let dense = vec_mat(&v, &m, &f);
            assert_eq!(pm.apply(P3::from_coords(&v)).to_coords(n), dense);
        }
    }
}
