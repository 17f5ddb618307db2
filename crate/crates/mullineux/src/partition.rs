use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::MullineuxError;

/// A partition: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts the parts descending and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// Accepts only parts that are already weakly decreasing and positive.
    pub fn from_parts(parts: Vec<u32>) -> Result<Self, MullineuxError> {
        if parts.iter().any(|&x| x == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(MullineuxError::NotAPartition(parts));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `(part, multiplicity)` blocks in decreasing order of part.
    pub fn blocks(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &x in &self.0 {
            match out.last_mut() {
                Some((v, a)) if *v == x => *a += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }

    /// `(4^2,1)`-style rendering.
    pub fn exponent_notation(&self) -> String {
        let items: Vec<String> =
            self.blocks().into_iter().map(|(v, a)| if a == 1 { v.to_string() } else { format!("{v}^{a}") }).collect();
        format!("({})", items.join(","))
    }

    pub fn conjugate(&self) -> Partition {
        let n = self.0.first().copied().unwrap_or(0);
        Partition((1..=n).map(|j| self.0.iter().filter(|&&x| x >= j).count() as u32).collect())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", items.join(","))
    }
}

impl FromStr for Partition {
    type Err = MullineuxError;

    /// Parses `8,1`, `(4,4,1)` or `4^2,1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.is_empty() {
            return Ok(Partition(Vec::new()));
        }
        let mut parts = Vec::new();
        for item in t.split(',') {
            let item = item.trim();
            let (v, a) = match item.split_once('^') {
                Some((v, a)) => (v, a),
                None => (item, "1"),
            };
            let bad = || MullineuxError::Parse(s.to_string());
            let v: u32 = v.trim().parse().map_err(|_| bad())?;
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            parts.extend(std::iter::repeat_n(v, a));
        }
        Partition::from_parts(parts)
    }
}

/// All partitions of `n`, lexicographically descending.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for x in (1..=max.min(n)).rev() {
            cur.push(x);
            rec(n - x, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// No part is repeated `p` or more times.
pub fn is_p_regular(lambda: &Partition, p: u32) -> bool {
    lambda.blocks().iter().all(|&(_, a)| a < p)
}

/// All `p`-regular partitions of `n`, lexicographically descending.
pub fn regular_partitions(n: u32, p: u32) -> Vec<Partition> {
    partitions(n).into_iter().filter(|l| is_p_regular(l, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let p: Partition = "4^2,1".parse().unwrap();
        assert_eq!(p.parts(), &[4, 4, 1]);
        assert_eq!(p.exponent_notation(), "(4^2,1)");
        assert_eq!(p.to_string(), "(4,4,1)");
        assert!("1,2".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=10).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        // 3-regular partitions equal partitions with no part divisible by 3
        for n in 0..=15 {
            let no_mult3 = partitions(n).iter().filter(|l| l.parts().iter().all(|x| x % 3 != 0)).count();
            assert_eq!(regular_partitions(n, 3).len(), no_mult3);
        }
    }

    #[test]
    fn regularity() {
        assert!(!is_p_regular(&Partition::new(vec![2, 2, 2]), 3));
        assert!(is_p_regular(&Partition::new(vec![8, 1]), 3));
        assert!(is_p_regular(&Partition::new(vec![1]), 5));
    }

    #[test]
    fn conjugate_is_an_involution() {
        for l in partitions(9) {
            assert_eq!(l.conjugate().conjugate(), l);
            assert_eq!(l.conjugate().size(), 9);
        }
    }
}
