use std::fmt;

use serde::{Deserialize, Serialize};

use crate::partition::{is_p_regular, Partition};
use crate::MullineuxError;

/// Columns `(h_i, r_i)`: cells in the `i`-th `p`-rim and rows before removing it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MullineuxSymbol {
    pub h: Vec<u32>,
    pub r: Vec<u32>,
}

impl MullineuxSymbol {
    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    /// `ε_i = 0` if `p | h_i`, else 1.
    pub fn epsilon(&self, p: u32) -> Vec<u32> {
        self.h.iter().map(|&h| u32::from(h % p != 0)).collect()
    }

    /// `[[h…],[r…]]`.
    pub fn grid(&self) -> [Vec<u32>; 2] {
        [self.h.clone(), self.r.clone()]
    }
}

impl fmt::Display for MullineuxSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{:?}", self.h, self.r)
    }
}

/// Rows `a = h − r`, `b = r − ε`, `ε`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusSymbol {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub eps: Vec<u32>,
}

impl FrobeniusSymbol {
    pub fn swapped(&self) -> FrobeniusSymbol {
        FrobeniusSymbol { a: self.b.clone(), b: self.a.clone(), eps: self.eps.clone() }
    }

    /// `h = a + b + ε`, `r = b + ε`.
    pub fn to_mullineux(&self) -> Option<MullineuxSymbol> {
        let mut h = Vec::new();
        let mut r = Vec::new();
        for i in 0..self.a.len() {
            let e = self.eps[i] as i64;
            let (hi, ri) = (self.a[i] + self.b[i] + e, self.b[i] + e);
            if hi <= 0 || ri <= 0 {
                return None;
            }
            h.push(hi as u32);
            r.push(ri as u32);
        }
        Some(MullineuxSymbol { h, r })
    }
}

fn check_prime(p: u32) -> Result<(), MullineuxError> {
    if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
        return Err(MullineuxError::BadPrime(p));
    }
    Ok(())
}

/// Rim cells of row `i`: from column `λ_i − 1` down to `max(λ_{i+1}, 1) − 1`.
fn rim_len(parts: &[u32], i: usize) -> u32 {
    let next = parts.get(i + 1).copied().unwrap_or(0);
    parts[i] - next.max(1) + 1
}

/// Cells removed from each row by the `p`-rim.
///
/// Walk the rim from the top-right corner. Take `p` cells; then skip the rest
/// of the row holding the last cell taken and start again at the right end of
/// the next row. The final segment may be short.
pub fn p_rim(lambda: &Partition, p: u32) -> Vec<u32> {
    let parts = lambda.parts();
    let mut removed = vec![0; parts.len()];
    let mut rem = p;
    for i in 0..parts.len() {
        let take = rem.min(rim_len(parts, i));
        removed[i] = take;
        rem -= take;
        if rem == 0 {
            rem = p;
        }
    }
    removed
}

fn strip(parts: &[u32], removed: &[u32]) -> Partition {
    Partition::new(parts.iter().zip(removed).map(|(a, b)| a - b).collect())
}

/// Mullineux symbol by repeated `p`-rim removal.
pub fn mullineux_symbol(lambda: &Partition, p: u32) -> Result<MullineuxSymbol, MullineuxError> {
    check_prime(p)?;
    if !is_p_regular(lambda, p) {
        return Err(MullineuxError::NotRegular(lambda.clone(), p));
    }
    let mut cur = lambda.clone();
    let (mut h, mut r) = (Vec::new(), Vec::new());
    while !cur.is_empty() {
        let removed = p_rim(&cur, p);
        h.push(removed.iter().sum());
        r.push(cur.len() as u32);
        cur = strip(cur.parts(), &removed);
    }
    Ok(MullineuxSymbol { h, r })
}

/// All `λ` with `r` rows whose `p`-rim has `h` cells and leaves `mu`.
fn add_rim(mu: &[u32], h: u32, r: usize, p: u32) -> Vec<Vec<u32>> {
    if mu.len() > r {
        return Vec::new();
    }
    let mu_at = |i: usize| mu.get(i).copied().unwrap_or(0);
    let mut out = Vec::new();
    // DFS over rows; λ_{i+1} is chosen while row i is checked, since the rim of
    // row i depends on the row below it.
    fn rec(
        i: usize,
        lam: &mut Vec<u32>,
        rem: u32,
        used: u32,
        ctx: &(u32, usize, u32, &dyn Fn(usize) -> u32),
        out: &mut Vec<Vec<u32>>,
    ) {
        let (h, r, p, mu_at) = *ctx;
        let li = lam[i];
        let (lo, hi) = if i + 1 == r { (0, 0) } else { (mu_at(i + 1).max(1), li) };
        for next in lo..=hi {
            let rim = li - next.max(1) + 1;
            let take = rem.min(rim);
            if li - take != mu_at(i) || used + take > h {
                continue;
            }
            let rem2 = if rem - take == 0 { p } else { rem - take };
            if i + 1 == r {
                if used + take == h {
                    out.push(lam.clone());
                }
            } else {
                lam.push(next);
                rec(i + 1, lam, rem2, used + take, ctx, out);
                lam.pop();
            }
        }
    }
    let ctx: (u32, usize, u32, &dyn Fn(usize) -> u32) = (h, r, p, &mu_at);
    for l0 in mu_at(0).max(1)..=mu_at(0) + h {
        let mut lam = vec![l0];
        rec(0, &mut lam, p, 0, &ctx, &mut out);
    }
    out
}

/// Rebuilds the partition with a given Mullineux symbol, innermost column first.
pub fn partition_from_symbol(sym: &MullineuxSymbol, p: u32) -> Result<Partition, MullineuxError> {
    check_prime(p)?;
    let bad = || MullineuxError::InvalidSymbol(sym.to_string());
    if sym.h.len() != sym.r.len() {
        return Err(bad());
    }
    let mut cands: Vec<Vec<u32>> = vec![Vec::new()];
    for i in (0..sym.len()).rev() {
        let mut next = Vec::new();
        for mu in &cands {
            for lam in add_rim(mu, sym.h[i], sym.r[i] as usize, p) {
                if !next.contains(&lam) {
                    next.push(lam);
                }
            }
        }
        cands = next;
        if cands.is_empty() {
            return Err(bad());
        }
    }
    let found: Vec<Partition> = cands
        .into_iter()
        .map(Partition::new)
        .filter(|l| is_p_regular(l, p) && mullineux_symbol(l, p).as_ref() == Ok(sym))
        .collect();
    match found.as_slice() {
        [one] => Ok(one.clone()),
        _ => Err(bad()),
    }
}

/// `a_i = h_i − r_i`, `b_i = r_i − ε_i`.
pub fn frobenius_symbol(lambda: &Partition, p: u32) -> Result<FrobeniusSymbol, MullineuxError> {
    let m = mullineux_symbol(lambda, p)?;
    let eps = m.epsilon(p);
    Ok(FrobeniusSymbol {
        a: m.h.iter().zip(&m.r).map(|(&h, &r)| h as i64 - r as i64).collect(),
        b: m.r.iter().zip(&eps).map(|(&r, &e)| r as i64 - e as i64).collect(),
        eps,
    })
}

/// The Mullineux map via `s_i = h_i − r_i + ε_i`.
pub fn mullineux_map(lambda: &Partition, p: u32) -> Result<Partition, MullineuxError> {
    let m = mullineux_symbol(lambda, p)?;
    let eps = m.epsilon(p);
    let s = (0..m.len()).map(|i| m.h[i] + eps[i] - m.r[i]).collect();
    partition_from_symbol(&MullineuxSymbol { h: m.h, r: s }, p)
}

/// The Mullineux map by swapping the first two rows of the Frobenius symbol.
pub fn mullineux_map_frobenius(lambda: &Partition, p: u32) -> Result<Partition, MullineuxError> {
    let fr = frobenius_symbol(lambda, p)?.swapped();
    let sym = fr.to_mullineux().ok_or_else(|| MullineuxError::InvalidSymbol(format!("{fr:?}")))?;
    partition_from_symbol(&sym, p)
}

/// Fixed points are exactly the partitions whose Frobenius symbol has equal first rows.
pub fn is_mullineux_fixed(lambda: &Partition, p: u32) -> Result<bool, MullineuxError> {
    let fr = frobenius_symbol(lambda, p)?;
    Ok(fr.a == fr.b)
}

/// `λ_i − λ_{i+1} + a_i + a_{i+1} ≡ 0 (mod p)` for consecutive blocks `λ_i^{a_i}`.
pub fn is_js_partition(lambda: &Partition, p: u32) -> Result<bool, MullineuxError> {
    if !is_p_regular(lambda, p) {
        return Err(MullineuxError::NotRegular(lambda.clone(), p));
    }
    let b = lambda.blocks();
    Ok(b.windows(2).all(|w| (w[0].0 - w[1].0 + w[0].1 + w[1].1) % p == 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn rim_of_hook() {
        assert_eq!(p_rim(&part("5,1,1"), 3), vec![3, 1, 1]);
        assert_eq!(p_rim(&part("2"), 3), vec![2]);
    }

    #[test]
    fn symbols() {
        let s = mullineux_symbol(&part("5,1,1"), 3).unwrap();
        assert_eq!(s.grid(), [vec![5, 2], vec![3, 1]]);
        let s = mullineux_symbol(&part("8,1,1"), 3).unwrap();
        assert_eq!(s.grid(), [vec![5, 3, 2], vec![3, 1, 1]]);
        let s = mullineux_symbol(&part("1"), 3).unwrap();
        assert_eq!(s.grid(), [vec![1], vec![1]]);
    }

    #[test]
    fn non_regular_rejected() {
        assert!(matches!(mullineux_symbol(&part("2,2,2"), 3), Err(MullineuxError::NotRegular(..))));
        assert!(matches!(mullineux_symbol(&part("2"), 4), Err(MullineuxError::BadPrime(4))));
    }

    #[test]
    fn reconstruction_round_trips() {
        for n in 1..=12 {
            for l in crate::regular_partitions(n, 3) {
                let s = mullineux_symbol(&l, 3).unwrap();
                assert_eq!(partition_from_symbol(&s, 3).unwrap(), l);
            }
        }
    }

    #[test]
    fn invalid_symbol_rejected() {
        let s = MullineuxSymbol { h: vec![1], r: vec![2] };
        assert!(partition_from_symbol(&s, 3).is_err());
    }

    #[test]
    fn small_maps() {
        // the image of (n) is the 3-regularisation of (1^n)
        assert_eq!(mullineux_map(&part("4"), 3).unwrap(), part("2,2"));
        assert!(!is_mullineux_fixed(&part("4"), 3).unwrap());
        assert!(is_mullineux_fixed(&part("3,1,1"), 3).unwrap());
        assert!(!is_mullineux_fixed(&part("5,1,1"), 3).unwrap());
    }

    #[test]
    fn js() {
        assert!(is_js_partition(&part("8,1"), 3).unwrap());
        assert!(!is_js_partition(&part("7,1"), 3).unwrap());
        assert!(is_js_partition(&part("4,4"), 3).unwrap());
    }
}
