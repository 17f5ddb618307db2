//! The embedded table of expected values and how each one is checked.

use rank3_core::Sign;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Core,
    Heavy,
    Ingest,
}

impl Tier {
    pub fn name(self) -> &'static str {
        match self {
            Tier::Core => "core",
            Tier::Heavy => "heavy",
            Tier::Ingest => "ingest",
        }
    }
}

/// Where the group of a case comes from.
#[derive(Clone, Copy, Debug)]
pub enum Source {
    /// No group: arithmetic or combinatorial check.
    None,
    /// A built-in construction label.
    Build(&'static str),
    /// A generator file looked up in the ingest directory.
    File(&'static str),
}

#[derive(Clone, Copy, Debug)]
pub enum Check {
    /// Exhaustive norm counts against the closed form, GF(3) dims 1–9 and GF(9) dims 1–4.
    Counting,
    /// `(|E|, k, l, λ, μ, s, t, f_s, f_t)` from the closed forms.
    Params {
        m: u32,
        xi: Sign,
        tuple: [i64; 9],
    },
    /// `(|E|, k, l, λ, μ)` measured on the point graph equals the closed form, both types.
    MeasuredParams {
        m: u32,
    },
    /// SRG identity and multiplicities on the point graph, both types.
    Spectrum {
        m: u32,
    },
    /// Sorted orbit sizes on one point type.
    OrbitSizes {
        xi: Sign,
        sizes: &'static [u64],
    },
    /// Number of orbits on one point type.
    OrbitCount {
        xi: Sign,
        count: usize,
    },
    /// `(c, d)` of a named base point.
    BaseCd {
        base: &'static str,
        c: u64,
        d: u64,
    },
    /// `(c, d)` of several base points, as a sorted list.
    CdSet {
        bases: &'static [&'static str],
        pairs: &'static [(u64, u64)],
    },
    /// Whether the containment equation holds on every orbit of a type, for r = s and r = t.
    Eq1 {
        xi: Sign,
        s: bool,
        t: bool,
    },
    /// `c − 2d = ξ3^m − 1` on every orbit of both types.
    Eq2Everywhere,
    /// Base points `v`, `w` against the deleted-module closed forms for `n`.
    DeletedClosedForms {
        n: i64,
    },
    /// Orbits of size 315 in the 13-dimensional factor of the S₈ tensor square.
    S8Thirteen,
    Mullineux {
        lambda: &'static str,
        image: &'static str,
    },
    /// Involution, size and regularity for every 3-regular partition of n ≤ 20.
    MullineuxExhaustive,
    /// `(n−2,1²)` is Mullineux-fixed exactly for n ∈ {5, 6}, 5 ≤ n ≤ 60.
    MullineuxFixedRange,
    /// Every base point has orbit below `(3^m+1)/2`, so the orbit-size bound fails.
    BelowBound,
    /// Some orbit with the given `(c, d)`; the named base point if the file has one.
    IngestCd {
        base: &'static str,
        c: u64,
        d: u64,
        scan_dim: usize,
    },
}

#[derive(Clone, Copy, Debug)]
pub struct ExpectedCase {
    pub label: &'static str,
    pub criterion: u8,
    pub tier: Tier,
    pub source: Source,
    pub check: Check,
    pub citation: &'static str,
}

const fn case(
    label: &'static str,
    criterion: u8,
    tier: Tier,
    source: Source,
    check: Check,
    citation: &'static str,
) -> ExpectedCase {
    ExpectedCase { label, criterion, tier, source, check, citation }
}

use Check::*;
use Sign::{Minus, Plus};
use Source::{Build, File};
use Tier::{Core, Heavy, Ingest};

// Values marked "published" are quoted from the source tables; the rest are
// closed forms evaluated at run time.
pub const CASES: &[ExpectedCase] = &[
    case("counting", 1, Core, Source::None, Counting, "norm counts S(n, γ) against the closed form"),
    // published: |E₊| = 378
    case(
        "higman-m3-plus",
        2,
        Core,
        Source::None,
        Params { m: 3, xi: Plus, tuple: [378, 117, 260, 36, 36, 9, -9, 182, 195] },
        "rank-3 parameters of Ω₇(3) on plus points",
    ),
    case("measured-m2", 2, Core, Source::None, MeasuredParams { m: 2 }, "rank-3 parameters measured on E_ξ, m = 2"),
    case("measured-m3", 2, Core, Source::None, MeasuredParams { m: 3 }, "rank-3 parameters measured on E_ξ, m = 3"),
    case("spectrum-m2", 3, Core, Source::None, Spectrum { m: 2 }, "strongly regular graph identities, m = 2"),
    case("spectrum-m3", 3, Core, Source::None, Spectrum { m: 3 }, "strongly regular graph identities, m = 3"),
    // published: wreath orbit sizes and exceptional cases
    case(
        "wreath-n5-plus-sizes",
        4,
        Core,
        Build("wreath-n5"),
        OrbitSizes { xi: Plus, sizes: &[5, 40] },
        "O₁(3)≀S₅ orbits on plus points",
    ),
    case(
        "wreath-n5-minus-sizes",
        4,
        Core,
        Build("wreath-n5"),
        OrbitSizes { xi: Minus, sizes: &[16, 20] },
        "O₁(3)≀S₅ orbits on minus points",
    ),
    case(
        "wreath-n7-plus-sizes",
        4,
        Core,
        Build("wreath-n7"),
        OrbitSizes { xi: Plus, sizes: &[42, 336] },
        "O₁(3)≀S₇ orbits on plus points",
    ),
    case(
        "wreath-n5-x1",
        4,
        Core,
        Build("wreath-n5"),
        BaseCd { base: "x1", c: 0, d: 4 },
        "wreath base point x₁: (0, n−1)",
    ),
    case(
        "wreath-n5-x1+x2",
        4,
        Core,
        Build("wreath-n5"),
        BaseCd { base: "x1+x2", c: 12, d: 7 },
        "wreath base point x₁+x₂: (4n−8, n²−5n+7)",
    ),
    case(
        "wreath-n7-x1",
        4,
        Core,
        Build("wreath-n7"),
        BaseCd { base: "x1", c: 0, d: 6 },
        "wreath base point x₁: (0, n−1)",
    ),
    case(
        "wreath-n7-x1+x2",
        4,
        Core,
        Build("wreath-n7"),
        BaseCd { base: "x1+x2", c: 20, d: 21 },
        "wreath base point x₁+x₂: (4n−8, n²−5n+7)",
    ),
    case(
        "wreath-n5-plus-eq1",
        4,
        Core,
        Build("wreath-n5"),
        Eq1 { xi: Plus, s: false, t: true },
        "containment equation holds for n = 5, plus points, r = t",
    ),
    case(
        "wreath-n5-minus-eq1",
        4,
        Core,
        Build("wreath-n5"),
        Eq1 { xi: Minus, s: true, t: false },
        "containment equation holds for n = 5, minus points, r = s",
    ),
    case(
        "wreath-n7-plus-eq1",
        4,
        Core,
        Build("wreath-n7"),
        Eq1 { xi: Plus, s: false, t: true },
        "containment equation holds for n = 7, plus points, r = t",
    ),
    case(
        "wreath-n7-minus-eq1",
        4,
        Core,
        Build("wreath-n7"),
        Eq1 { xi: Minus, s: false, t: false },
        "containment equation fails for n = 7, minus points",
    ),
    // published: parabolic n = 7, α = 1
    case(
        "parabolic-n7-a1-plus",
        5,
        Core,
        Build("parabolic-n7-a1"),
        OrbitSizes { xi: Plus, sizes: &[135, 243] },
        "stabiliser of a singular point in Ω₇(3)",
    ),
    case(
        "parabolic-n7-a1-minus",
        5,
        Core,
        Build("parabolic-n7-a1"),
        OrbitCount { xi: Minus, count: 2 },
        "stabiliser of a singular point in Ω₇(3)",
    ),
    // published: field extension n = 9
    case(
        "fieldext-n9-plus",
        6,
        Core,
        Build("fieldext-n9"),
        OrbitSizes { xi: Plus, sizes: &[1053, 1134, 1134] },
        "extension-field subgroup of Ω₉(3) over GF(27)",
    ),
    case(
        "fieldext-n9-minus",
        6,
        Core,
        Build("fieldext-n9"),
        OrbitCount { xi: Minus, count: 3 },
        "extension-field subgroup of Ω₉(3) over GF(27)",
    ),
    case("fieldext-n9-eq2", 6, Core, Build("fieldext-n9"), Eq2Everywhere, "c − 2d = ±3⁴ − 1 on every orbit"),
    // published: deleted permutation module, base point w
    case(
        "deleted-n10-w",
        7,
        Core,
        Build("deleted-n10"),
        BaseCd { base: "w", c: 438, d: 191 },
        "S₁₀ on its fully deleted module",
    ),
    case(
        "deleted-n14-w",
        7,
        Core,
        Build("deleted-n14"),
        BaseCd { base: "w", c: 1970, d: 1032 },
        "S₁₄ on its fully deleted module",
    ),
    case(
        "deleted-n15-w",
        7,
        Core,
        Build("deleted-n15"),
        BaseCd { base: "w", c: 2618, d: 1476 },
        "S₁₅ on its fully deleted module",
    ),
    case(
        "deleted-n16-w",
        7,
        Core,
        Build("deleted-n16"),
        BaseCd { base: "w", c: 3396, d: 2063 },
        "S₁₆ on its fully deleted module",
    ),
    case(
        "deleted-n10-closed",
        7,
        Core,
        Build("deleted-n10"),
        DeletedClosedForms { n: 10 },
        "deleted-module closed forms, n = 10",
    ),
    case(
        "deleted-n14-closed",
        7,
        Core,
        Build("deleted-n14"),
        DeletedClosedForms { n: 14 },
        "deleted-module closed forms, n = 14",
    ),
    case(
        "deleted-n15-closed",
        7,
        Core,
        Build("deleted-n15"),
        DeletedClosedForms { n: 15 },
        "deleted-module closed forms, n = 15",
    ),
    case(
        "deleted-n16-closed",
        7,
        Core,
        Build("deleted-n16"),
        DeletedClosedForms { n: 16 },
        "deleted-module closed forms, n = 16",
    ),
    // published: (230,84) and (212,102)
    case(
        "s8-tensor-thirteen",
        8,
        Core,
        Source::None,
        S8Thirteen,
        "13-dimensional factor of the S₈ permutation module squared",
    ),
    // published: ∧² and λ₂ values
    case(
        "wedge-omega7",
        9,
        Core,
        Build("wedge-omega7"),
        CdSet { bases: &["plus-xi", "minus-xi"], pairs: &[(13040, 9072), (26324, 17901)] },
        "Ω₇(3) on ∧²N",
    ),
    case(
        "sp6-lambda2-minus",
        9,
        Core,
        Build("sp6-lambda2"),
        OrbitCount { xi: Minus, count: 1 },
        "Sp₆(3) on the 13-dimensional λ₂ module",
    ),
    case(
        "sp6-lambda2-plus",
        9,
        Core,
        Build("sp6-lambda2"),
        OrbitCount { xi: Plus, count: 2 },
        "Sp₆(3) on the 13-dimensional λ₂ module",
    ),
    case(
        "sp6-sym-minus",
        9,
        Core,
        Build("sp6-sym"),
        BaseCd { base: "minus-xi", c: 26324, d: 17901 },
        "Sp₆(3) on S²N modulo its radical",
    ),
    case(
        "sp6-sym-wide-plus",
        9,
        Heavy,
        Build("sp6-sym"),
        BaseCd { base: "wide-plus", c: 7075430, d: 3538809 },
        "Sp₆(3) on S²N modulo its radical",
    ),
    // published: Mullineux pairs at p = 3
    case(
        "mullineux-4,2",
        10,
        Core,
        Source::None,
        Mullineux { lambda: "4,2", image: "2^2,1^2" },
        "Mullineux pairs at p = 3",
    ),
    case(
        "mullineux-5,2",
        10,
        Core,
        Source::None,
        Mullineux { lambda: "5,2", image: "3,2,1^2" },
        "Mullineux pairs at p = 3",
    ),
    case(
        "mullineux-5,1^2",
        10,
        Core,
        Source::None,
        Mullineux { lambda: "5,1^2", image: "3,2^2" },
        "Mullineux pairs at p = 3",
    ),
    case(
        "mullineux-7,1",
        10,
        Core,
        Source::None,
        Mullineux { lambda: "7,1", image: "4,3,1" },
        "Mullineux pairs at p = 3",
    ),
    case(
        "mullineux-6,2",
        10,
        Core,
        Source::None,
        Mullineux { lambda: "6,2", image: "3^2,1^2" },
        "Mullineux pairs at p = 3",
    ),
    case(
        "mullineux-6,1^2",
        10,
        Core,
        Source::None,
        Mullineux { lambda: "6,1^2", image: "3^2,2" },
        "Mullineux pairs at p = 3",
    ),
    case(
        "mullineux-7,1^2",
        10,
        Core,
        Source::None,
        Mullineux { lambda: "7,1^2", image: "4,3,2" },
        "Mullineux pairs at p = 3",
    ),
    case(
        "mullineux-8,1",
        10,
        Core,
        Source::None,
        Mullineux { lambda: "8,1", image: "4^2,1" },
        "Mullineux pairs at p = 3",
    ),
    case("mullineux-exhaustive", 10, Core, Source::None, MullineuxExhaustive, "Mullineux involution for n ≤ 20"),
    case("mullineux-fixed-range", 10, Core, Source::None, MullineuxFixedRange, "(n−2,1²) fixed iff 5 ≤ n ≤ 6"),
    case("bound-tensor-3x5", 11, Core, Build("tensor-3x5"), BelowBound, "tensor-product subgroup of Ω₁₅(3)"),
    case(
        "bound-tensorwreath-n25",
        11,
        Core,
        Build("tensorwreath-n25"),
        BelowBound,
        "tensor-induced subgroup of Ω₂₅(3)",
    ),
    case(
        "bound-imprimitive-o3wr3",
        11,
        Core,
        Build("imprimitive-o3wr3"),
        BelowBound,
        "imprimitive O₃(3) ≀ S₃ in Ω₉(3)",
    ),
    // published: L₂(13) and McL
    case(
        "ingest-l2-13",
        12,
        Ingest,
        File("l2-13.gen"),
        IngestCd { base: "x", c: 734, d: 357, scan_dim: 13 },
        "L₂(13) in Ω₁₃(3)",
    ),
    case(
        "ingest-mcl",
        12,
        Ingest,
        File("mcl.gen"),
        IngestCd { base: "x", c: 12194, d: 10080, scan_dim: 0 },
        "McL in Ω₂₁(3)",
    ),
];

/// Cases run by a tier: `core` alone, `heavy` = core + heavy, `ingest` alone.
pub fn cases_for(tier: Tier) -> Vec<&'static ExpectedCase> {
    CASES
        .iter()
        .filter(|c| match tier {
            Core => c.tier == Core,
            Heavy => c.tier != Ingest,
            Ingest => c.tier == Ingest,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn table_is_well_formed() {
        let mut seen = HashSet::new();
        for c in CASES {
            assert!(!c.citation.is_empty(), "{}", c.label);
            assert!(seen.insert(c.label), "duplicate {}", c.label);
            assert!((1..=12).contains(&c.criterion));
            if let Build(l) = c.source {
                assert!(rank3_core::constructions::labels().iter().any(|x| x == l), "{l}");
            }
        }
        let criteria: HashSet<u8> = CASES.iter().map(|c| c.criterion).collect();
        assert_eq!(criteria.len(), 12);
    }
}
