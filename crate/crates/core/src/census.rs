//! Brute-force counts behind the intersection numbers.
//!
//! Nothing in this module calls into [`crate::arith`]: every count is obtained
//! by enumerating the objects it counts, so it can serve as an oracle for the
//! closed forms elsewhere in the crate.

use std::collections::HashSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, int, Rational};

/// Default ceiling for brute-force subgroup enumeration in [`census_type_2b`].
pub const DEFAULT_ORACLE_BOUND: u64 = 24;

/// A sublattice of `Z²` in Hermite normal form, with basis `(a, 0), (b, c)`,
/// `a, c > 0`, `0 <= b < a`. Its index is `a·c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HnfBasis {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl HnfBasis {
    pub fn index(&self) -> u64 {
        self.a * self.c
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SublatticeCount {
    pub count: u64,
    pub witnesses: Vec<HnfBasis>,
}

/// Every index-`d` sublattice of `Z²`, one HNF triple each.
pub fn count_sublattices_hnf(d: u64) -> SublatticeCount {
    let mut witnesses = Vec::new();
    for a in 1..=d {
        if !d.is_multiple_of(a) {
            continue;
        }
        let c = d / a;
        for b in 0..a {
            witnesses.push(HnfBasis { a, b, c });
        }
    }
    SublatticeCount {
        count: witnesses.len() as u64,
        witnesses,
    }
}

/// Same enumeration as [`count_sublattices_hnf`] without materialising witnesses.
pub fn sublattice_count(d: u64) -> u64 {
    let mut count = 0;
    for a in 1..=d {
        if d.is_multiple_of(a) {
            for _b in 0..a {
                count += 1;
            }
        }
    }
    count
}

/// Nonzero points of `(Z/d)²`, counted one by one.
pub fn count_torsion_covers(d: u64) -> u64 {
    let mut count = 0;
    for x in 0..d {
        for y in 0..d {
            if (x, y) != (0, 0) {
                count += 1;
            }
        }
    }
    count
}

/// A subgroup of `(Z/d)²` as a membership bitset over points `x·d + y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    modulus: u64,
    bits: Vec<u64>,
    order: u64,
    generators: [(u64, u64); 2],
}

impl Subgroup {
    fn empty(modulus: u64) -> Self {
        let words = ((modulus * modulus) as usize).div_ceil(64);
        Self {
            modulus,
            bits: vec![0; words],
            order: 0,
            generators: [(0, 0), (0, 0)],
        }
    }

    fn insert(&mut self, (x, y): (u64, u64)) {
        let i = (x * self.modulus + y) as usize;
        let (w, b) = (i / 64, i % 64);
        if self.bits[w] & (1 << b) == 0 {
            self.bits[w] |= 1 << b;
            self.order += 1;
        }
    }

    pub fn contains(&self, (x, y): (u64, u64)) -> bool {
        let i = (x * self.modulus + y) as usize;
        self.bits[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generators(&self) -> [(u64, u64); 2] {
        self.generators
    }

    pub fn elements(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        let d = self.modulus;
        (0..d * d).map(move |i| (i / d, i % d)).filter(|&p| self.contains(p))
    }

    fn cyclic(modulus: u64, g: (u64, u64)) -> Self {
        let mut s = Self::empty(modulus);
        let mut cur = (0, 0);
        loop {
            s.insert(cur);
            cur = ((cur.0 + g.0) % modulus, (cur.1 + g.1) % modulus);
            if cur == (0, 0) {
                break;
            }
        }
        s.generators = [g, (0, 0)];
        s
    }

    fn sum(&self, other: &Self) -> Self {
        let d = self.modulus;
        let mut s = Self::empty(d);
        let rhs: Vec<_> = other.elements().collect();
        for (x, y) in self.elements() {
            for &(u, v) in &rhs {
                s.insert(((x + u) % d, (y + v) % d));
            }
        }
        s.generators = [self.generators[0], other.generators[0]];
        s
    }

    /// The HNF basis of the preimage of this subgroup in `Z²` (a lattice
    /// containing `dZ²`).
    pub fn hnf(&self) -> HnfBasis {
        let d = self.modulus;
        let a = (1..=d).find(|&x| self.contains((x % d, 0))).expect("d·e1 lies in every preimage");
        let c = (1..=d)
            .find(|&y| (0..d).any(|x| self.contains((x, y % d))))
            .expect("d·e2 lies in every preimage");
        let b = (0..a)
            .find(|&x| self.contains((x % d, c % d)))
            .expect("some lift of the second basis vector reduces below a");
        HnfBasis { a, b, c }
    }
}

/// All subgroups of `(Z/d)²` of order `d`, found by forming every sum of two
/// cyclic subgroups and deduplicating. Sorted by HNF for stable output.
pub fn enumerate_order_d_subgroups(d: u64) -> Vec<Subgroup> {
    assert!(d >= 1);
    let mut seen = HashSet::new();
    let mut cyclic = Vec::new();
    for x in 0..d {
        for y in 0..d {
            let c = Subgroup::cyclic(d, (x, y));
            if seen.insert(c.bits.clone()) {
                cyclic.push(c);
            }
        }
    }

    let mut found = HashSet::new();
    let mut out = Vec::new();
    for (i, c1) in cyclic.iter().enumerate() {
        for c2 in &cyclic[i..] {
            // |C1 + C2| divides |C1|·|C2|, and both orders must divide d.
            if !d.is_multiple_of(c1.order) || !d.is_multiple_of(c2.order) || c1.order * c2.order < d {
                continue;
            }
            let s = c1.sum(c2);
            if s.order == d && found.insert(s.bits.clone()) {
                out.push(s);
            }
        }
    }
    out.sort_by_key(Subgroup::hnf);
    out
}

/// Where the stabilised source of a cover lands in `M̄₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ImageStratum {
    /// Smooth curves.
    M2Interior,
    /// Two elliptic curves meeting at a node.
    Delta1,
    /// Irreducible curves with a single node.
    Delta0Generic,
    /// Rational curves with two nodes, away from `C₀₀₁`.
    Delta00MinusC001,
    /// Two rational curves meeting in three points.
    C000,
    /// A nodal cubic meeting a nodal cubic (or its limit) at one point.
    C001,
}

/// One row of the classification of admissible covers of a genus-1 curve by
/// a genus-2 curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CoverTypeLabel {
    pub label: &'static str,
    pub target_description: &'static str,
    pub source_description: &'static str,
    pub image_stratum: ImageStratum,
    pub image_statement: &'static str,
}

const TARGET_1: &str = "smooth genus 1 curve with two marked points";
const TARGET_2: &str = "genus 1 curve with a rational tail carrying both marked points";
const TARGET_3: &str = "nodal cubic with two marked points";
const TARGET_4: &str = "nodal cubic with a rational tail carrying both marked points";
const TARGET_5: &str = "two rational curves meeting in two points, one marked point on each";

static CLASSIFICATION: [CoverTypeLabel; 19] = [
    CoverTypeLabel {
        label: "1",
        target_description: TARGET_1,
        source_description: "smooth genus 2 curve",
        image_stratum: ImageStratum::M2Interior,
        image_statement: "[X] in M2",
    },
    CoverTypeLabel {
        label: "2A",
        target_description: TARGET_2,
        source_description: "genus 2 component over the genus 1 part with two ramification-2 points over the node",
        image_stratum: ImageStratum::M2Interior,
        image_statement: "[X2] in M2",
    },
    CoverTypeLabel {
        label: "2A'",
        target_description: TARGET_2,
        source_description: "genus 2 component over the genus 1 part with one ramification-3 point over the node",
        image_stratum: ImageStratum::M2Interior,
        image_statement: "[X2] in M2",
    },
    CoverTypeLabel {
        label: "2B",
        target_description: TARGET_2,
        source_description: "one genus 1 component with a degree 2 rational bridge joining two points over the node",
        image_stratum: ImageStratum::Delta0Generic,
        image_statement: "X1 with two d-torsion-difference points glued",
    },
    CoverTypeLabel {
        label: "2C",
        target_description: TARGET_2,
        source_description: "two genus 1 components joined by a degree 2 rational bridge",
        image_stratum: ImageStratum::Delta1,
        image_statement: "[X1 ∪ X1']",
    },
    CoverTypeLabel {
        label: "3A",
        target_description: TARGET_3,
        source_description: "rational component with four points over the node and two chains of rational curves",
        image_stratum: ImageStratum::Delta00MinusC001,
        image_statement: "Δ00 − [C001]",
    },
    CoverTypeLabel {
        label: "3B",
        target_description: TARGET_3,
        source_description: "two rational components with three points each over the node, joined by three chains",
        image_stratum: ImageStratum::C000,
        image_statement: "[C000]",
    },
    CoverTypeLabel {
        label: "3B'",
        target_description: TARGET_3,
        source_description: "two rational components with three points each over the node, joined by one chain with a loop on each",
        image_stratum: ImageStratum::C001,
        image_statement: "[C001]",
    },
    CoverTypeLabel {
        label: "3C",
        target_description: TARGET_3,
        source_description: "genus 1 component attached at two points to a chain of rational curves x -> x^a",
        image_stratum: ImageStratum::Delta0Generic,
        image_statement: "X1 with two a-torsion points glued",
    },
    CoverTypeLabel {
        label: "4A",
        target_description: TARGET_4,
        source_description: "type 3A source over the nodal cubic, triple ramification over the attaching point",
        image_stratum: ImageStratum::Delta00MinusC001,
        image_statement: "Δ00 − [C001]",
    },
    CoverTypeLabel {
        label: "4A'",
        target_description: TARGET_4,
        source_description: "type 3A source over the nodal cubic, both simple ramifications over the attaching point",
        image_stratum: ImageStratum::Delta00MinusC001,
        image_statement: "Δ00 − [C001]",
    },
    CoverTypeLabel {
        label: "4B",
        target_description: TARGET_4,
        source_description: "type 3B source over the nodal cubic, ramification constrained over the attaching point",
        image_stratum: ImageStratum::C000,
        image_statement: "[C000]",
    },
    CoverTypeLabel {
        label: "4B'",
        target_description: TARGET_4,
        source_description: "type 3B' source over the nodal cubic, ramification constrained over the attaching point",
        image_stratum: ImageStratum::C001,
        image_statement: "[C001]",
    },
    CoverTypeLabel {
        label: "4C",
        target_description: TARGET_4,
        source_description: "type 3C source over the nodal cubic, triple ramification over the attaching point",
        image_stratum: ImageStratum::Delta0Generic,
        image_statement: "irreducible genus 2 curve with one node",
    },
    CoverTypeLabel {
        label: "4C'",
        target_description: TARGET_4,
        source_description: "type 3C source over the nodal cubic, both simple ramifications over the attaching point",
        image_stratum: ImageStratum::Delta0Generic,
        image_statement: "irreducible genus 2 curve with one node",
    },
    CoverTypeLabel {
        label: "4D",
        target_description: TARGET_4,
        source_description: "cycle of rational curves with a degree 2 bridge between two distinct components",
        image_stratum: ImageStratum::C000,
        image_statement: "[C000]",
    },
    CoverTypeLabel {
        label: "4D'",
        target_description: TARGET_4,
        source_description: "cycle of rational curves with a degree 2 bridge between two points of one component",
        image_stratum: ImageStratum::Delta00MinusC001,
        image_statement: "Δ00 − [C001]",
    },
    CoverTypeLabel {
        label: "4E",
        target_description: TARGET_4,
        source_description: "two disjoint cycles of rational curves joined by a degree 2 bridge",
        image_stratum: ImageStratum::C001,
        image_statement: "[C001]",
    },
    CoverTypeLabel {
        label: "5",
        target_description: TARGET_5,
        source_description: "two rational curves meeting in three points",
        image_stratum: ImageStratum::C000,
        image_statement: "X ≅ C000",
    },
];

pub fn classification_table() -> &'static [CoverTypeLabel] {
    &CLASSIFICATION
}

pub fn lookup_cover_type(label: &str) -> Option<&'static CoverTypeLabel> {
    CLASSIFICATION.iter().find(|c| c.label == label)
}

fn cover_type(label: &str) -> CoverTypeLabel {
    *lookup_cover_type(label).expect("label is in the static table")
}

/// What a single census entry enumerates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CensusParams {
    /// Ordered pair of isogeny degrees `(i, d - i)` onto a common curve.
    IsogenyPair { first: u64, second: u64 },
    /// An order-`d` subgroup `G ⊂ E[d]`; the configurations are its nonzero points.
    Subgroup {
        hnf: HnfBasis,
        generators: [(u64, u64); 2],
        enumerated: bool,
    },
    /// A chain of `n` rational curves over a genus 1 curve mapping with degree `a`.
    TorsionChain { torsion_order: u64, chain_length: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub params: CensusParams,
    #[serde(with = "rational::serde_compact")]
    pub configuration_count: Rational,
    #[serde(with = "rational::serde_compact")]
    pub multiplicity: Rational,
}

impl CensusEntry {
    pub fn contribution(&self) -> Rational {
        &self.configuration_count * &self.multiplicity
    }
}

/// Enumeration of one cover type at one degree. `total` is always
/// `Σ configuration_count · multiplicity`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub degree: u64,
    #[serde(rename = "type", serialize_with = "serialize_label")]
    pub cover_type: CoverTypeLabel,
    pub entries: Vec<CensusEntry>,
    #[serde(with = "rational::serde_compact")]
    pub total: Rational,
}

fn serialize_label<S: serde::Serializer>(c: &CoverTypeLabel, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(c.label)
}

impl CensusReport {
    fn new(degree: u64, label: &str, entries: Vec<CensusEntry>) -> Self {
        let total = entries.iter().map(CensusEntry::contribution).sum();
        Self {
            degree,
            cover_type: cover_type(label),
            entries,
            total,
        }
    }

    pub fn recomputed_total(&self) -> Rational {
        self.entries.iter().map(CensusEntry::contribution).sum()
    }
}

/// Ordered pairs of isogenies `E → E''`, `E' → E''` with degrees summing to
/// `d`. Each isogeny count is a sublattice enumeration.
pub fn census_type_2c(d: u64) -> CensusReport {
    if d < 2 {
        return CensusReport::new(d, "2C", Vec::new());
    }
    let counts: Vec<u64> = (1..d).map(sublattice_count).collect();
    let entries = (1..d)
        .map(|i| CensusEntry {
            params: CensusParams::IsogenyPair {
                first: i,
                second: d - i,
            },
            configuration_count: int((counts[(i - 1) as usize] * counts[(d - i - 1) as usize]) as i64),
            multiplicity: Rational::one(),
        })
        .collect();
    CensusReport::new(d, "2C", entries)
}

/// Pairs `(G, g)` with `G ⊂ E[d]` of order `d` and `0 != g ∈ G`, using the
/// default brute-force ceiling.
pub fn census_type_2b(d: u64) -> CensusReport {
    census_type_2b_with_bound(d, DEFAULT_ORACLE_BOUND)
}

/// As [`census_type_2b`]; subgroups are enumerated by brute force for
/// `d <= bound` and read off from HNF triples above it.
pub fn census_type_2b_with_bound(d: u64, bound: u64) -> CensusReport {
    assert!(d >= 1, "degree must be positive");
    let per_subgroup = int(d as i64 - 1);
    let entry = |hnf: HnfBasis, generators, enumerated| CensusEntry {
        params: CensusParams::Subgroup {
            hnf,
            generators,
            enumerated,
        },
        configuration_count: per_subgroup.clone(),
        multiplicity: Rational::one(),
    };
    let entries = if d <= bound {
        enumerate_order_d_subgroups(d)
            .iter()
            .map(|g| entry(g.hnf(), g.generators(), true))
            .collect()
    } else {
        count_sublattices_hnf(d)
            .witnesses
            .into_iter()
            .map(|h| entry(h, [(h.a % d, 0), (h.b % d, h.c % d)], false))
            .collect()
    };
    CensusReport::new(d, "2B", entries)
}

/// Covers whose source is a genus 1 curve glued along a chain of `n`
/// rational curves, one for each nonzero `a`-torsion point with `a·n = d`,
/// `a >= 2`. The multiplicity is the net local multiplicity `n` times 2 for
/// the labelling of the branch points.
pub fn census_type_3c(d: u64) -> CensusReport {
    assert!(d >= 1, "degree must be positive");
    let entries = (2..=d)
        .filter(|a| d.is_multiple_of(*a))
        .map(|a| {
            let n = d / a;
            CensusEntry {
                params: CensusParams::TorsionChain {
                    torsion_order: a,
                    chain_length: n,
                },
                configuration_count: int(count_torsion_covers(a) as i64),
                multiplicity: int(2 * n as i64),
            }
        })
        .collect();
    CensusReport::new(d, "3C", entries)
}

/// Reports for several degrees evaluated in parallel; output is ordered by `d`.
pub fn census_batch(
    degrees: impl IntoIterator<Item = u64>,
    f: impl Fn(u64) -> CensusReport + Sync + Send,
) -> Vec<CensusReport> {
    use rayon::prelude::*;
    let ds: Vec<u64> = degrees.into_iter().collect();
    ds.par_iter().map(|&d| f(d)).collect()
}

pub fn is_zero_report(r: &CensusReport) -> bool {
    r.entries.is_empty() && r.total.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_small() {
        let one = count_sublattices_hnf(1);
        assert_eq!(one.count, 1);
        assert_eq!(one.witnesses, vec![HnfBasis { a: 1, b: 0, c: 1 }]);
        let two = count_sublattices_hnf(2);
        assert_eq!(two.count, 3);
        assert_eq!(
            two.witnesses,
            vec![
                HnfBasis { a: 1, b: 0, c: 2 },
                HnfBasis { a: 2, b: 0, c: 1 },
                HnfBasis { a: 2, b: 1, c: 1 },
            ]
        );
        assert_eq!(count_sublattices_hnf(4).count, 7);
        assert!(count_sublattices_hnf(12).witnesses.iter().all(|h| h.index() == 12 && h.b < h.a));
        assert_eq!(sublattice_count(12), count_sublattices_hnf(12).count);
    }

    #[test]
    fn torsion_covers() {
        assert_eq!(count_torsion_covers(1), 0);
        assert_eq!(count_torsion_covers(2), 3);
        assert_eq!(count_torsion_covers(6), 35);
    }

    #[test]
    fn subgroups_of_small_groups() {
        // (Z/2)² has three subgroups of order 2.
        let gs = enumerate_order_d_subgroups(2);
        assert_eq!(gs.len(), 3);
        assert!(gs.iter().all(|g| g.order() == 2));
        assert_eq!(enumerate_order_d_subgroups(1).len(), 1);
        assert_eq!(enumerate_order_d_subgroups(4).len(), 7);
        // p + 1 lines for a prime p.
        assert_eq!(enumerate_order_d_subgroups(7).len(), 8);
    }

    #[test]
    fn subgroup_hnf_is_a_bijection() {
        for d in 1..=12 {
            let mut from_groups: Vec<_> = enumerate_order_d_subgroups(d).iter().map(Subgroup::hnf).collect();
            from_groups.sort();
            let mut from_lattices = count_sublattices_hnf(d).witnesses;
            from_lattices.sort();
            assert_eq!(from_groups, from_lattices, "d = {d}");
        }
    }

    #[test]
    fn census_2c_examples() {
        assert_eq!(census_type_2c(2).total, int(1));
        assert_eq!(census_type_2c(3).total, int(6));
        assert!(is_zero_report(&census_type_2c(1)));
        assert!(is_zero_report(&census_type_2c(0)));
    }

    #[test]
    fn census_2b_examples() {
        assert_eq!(census_type_2b(1).total, int(0));
        assert_eq!(census_type_2b(2).total, int(3));
        assert_eq!(census_type_2b(4).total, int(21));
    }

    #[test]
    fn census_2b_routes_agree_in_overlap() {
        for d in 1..=16 {
            let brute = census_type_2b_with_bound(d, d);
            let hnf = census_type_2b_with_bound(d, 0);
            assert_eq!(brute.total, hnf.total, "d = {d}");
            let key = |r: &CensusReport| {
                let mut v: Vec<_> = r
                    .entries
                    .iter()
                    .map(|e| match e.params {
                        CensusParams::Subgroup { hnf, .. } => hnf,
                        _ => unreachable!(),
                    })
                    .collect();
                v.sort();
                v
            };
            assert_eq!(key(&brute), key(&hnf));
        }
    }

    #[test]
    fn census_3c_examples() {
        assert_eq!(census_type_3c(2).total, int(6));
        assert_eq!(census_type_3c(4).total, int(42));
        assert!(census_type_3c(1).entries.is_empty());
        for d in 1..=30 {
            assert_eq!(census_type_3c(d).total, census_type_2b(d).total.clone() * int(2));
        }
    }

    #[test]
    fn totals_are_sums_of_entries() {
        for d in 1..=20 {
            for r in [census_type_2b(d), census_type_2c(d), census_type_3c(d)] {
                assert_eq!(r.total, r.recomputed_total());
            }
        }
    }

    #[test]
    fn taxonomy() {
        let t = classification_table();
        assert_eq!(t.len(), 19);
        assert_eq!(lookup_cover_type("2C").unwrap().image_stratum, ImageStratum::Delta1);
        assert_eq!(lookup_cover_type("3B").unwrap().image_stratum, ImageStratum::C000);
        assert_eq!(lookup_cover_type("3A").unwrap().image_stratum, ImageStratum::Delta00MinusC001);
        assert_eq!(lookup_cover_type("4E").unwrap().image_stratum, ImageStratum::C001);
        assert_eq!(lookup_cover_type("5").unwrap().image_statement, "X ≅ C000");
        assert!(lookup_cover_type("6").is_none());
        let labels: HashSet<_> = t.iter().map(|c| c.label).collect();
        assert_eq!(labels.len(), 19);
    }

    #[test]
    fn batch_matches_serial() {
        let par = census_batch(1..=40, census_type_2c);
        let ser: Vec<_> = (1..=40).map(census_type_2c).collect();
        assert_eq!(par, ser);
    }

    #[test]
    fn report_json() {
        let r = census_type_3c(4);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["degree"], 4);
        assert_eq!(v["type"], "3C");
        assert_eq!(v["total"], "42");
        assert_eq!(v["entries"][0]["configuration_count"], "3");
        assert_eq!(v["entries"][0]["multiplicity"], "4");
        assert_eq!(v["entries"][0]["params"]["kind"], "torsion_chain");
    }
}
