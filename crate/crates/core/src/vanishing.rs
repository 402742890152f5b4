//! Vanishing classes, their orders, the pairwise-gcd properties (⋆)/(⋆⋆)
//! and the vanishing prime graph `Γ(G) = Π(Vo(G))`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::chartab::CharacterTable;
use crate::numbers::{gcd, prime_divisors};

/// A zero entry of the character table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZeroWitness {
    pub row: usize,
    pub class: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VanishingProfile {
    /// Classes on which some irreducible character vanishes, ascending.
    pub vanishing_class_indices: Vec<usize>,
    /// `ord(vC_i)`, parallel to `vanishing_class_indices`.
    pub orders: Vec<u64>,
    /// `Vo(G)`.
    pub vo: BTreeSet<u64>,
    /// Max of `gcd(ord(vC_i), ord(vC_j))` over distinct classes; 0 when fewer
    /// than two vanishing classes exist.
    pub pairwise_gcd_max: u64,
    pub satisfies_star: bool,
    pub satisfies_star_star: bool,
    /// True when the vanishing set is empty (abelian groups), making the
    /// two properties hold vacuously.
    pub vacuous: bool,
    pub vo_pairwise_coprime: bool,
    /// One zero entry per vanishing class, parallel to `vanishing_class_indices`.
    pub witnesses: Vec<ZeroWitness>,
}

impl VanishingProfile {
    pub fn is_vanishing(&self, class: usize) -> bool {
        self.vanishing_class_indices.binary_search(&class).is_ok()
    }

    /// `r`, the number of vanishing classes.
    pub fn count(&self) -> usize {
        self.vanishing_class_indices.len()
    }
}

pub fn vanishing_profile(table: &CharacterTable) -> VanishingProfile {
    let mut vanishing_class_indices = Vec::new();
    let mut witnesses = Vec::new();
    for class in 0..table.class_count() {
        if let Some(row) = (0..table.len()).find(|&r| table.values[r][class].is_zero()) {
            vanishing_class_indices.push(class);
            witnesses.push(ZeroWitness { row, class });
        }
    }
    let orders: Vec<u64> = vanishing_class_indices
        .iter()
        .map(|&c| table.classes[c].element_order)
        .collect();
    let vo: BTreeSet<u64> = orders.iter().copied().collect();
    let max = pairwise_gcd_max(&orders);
    VanishingProfile {
        vacuous: vanishing_class_indices.is_empty(),
        satisfies_star: max <= 1,
        satisfies_star_star: max <= 2,
        vo_pairwise_coprime: vo_pairwise_coprime(&vo),
        pairwise_gcd_max: max,
        vanishing_class_indices,
        orders,
        vo,
        witnesses,
    }
}

/// Max gcd over unordered pairs of distinct list positions; 0 for fewer than
/// two entries.
pub fn pairwise_gcd_max(orders: &[u64]) -> u64 {
    let mut best = 0;
    for i in 0..orders.len() {
        for j in i + 1..orders.len() {
            best = best.max(gcd(orders[i], orders[j]));
        }
    }
    best
}

/// Whether all distinct members of `vo` are pairwise coprime.
pub fn vo_pairwise_coprime(vo: &BTreeSet<u64>) -> bool {
    let v: Vec<u64> = vo.iter().copied().collect();
    (0..v.len()).all(|i| (i + 1..v.len()).all(|j| gcd(v[i], v[j]) == 1))
}

/// Largest number of zero entries in a single row.
pub fn max_vanishing_classes_per_character(table: &CharacterTable) -> usize {
    (0..table.len())
        .map(|r| table.values[r].iter().filter(|v| v.is_zero()).count())
        .max()
        .unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeGraph {
    pub vertices: BTreeSet<u64>,
    pub edges: BTreeSet<(u64, u64)>,
    /// Connected components, each sorted, ordered by least vertex.
    pub components: Vec<Vec<u64>>,
}

/// `Π(Y)`: primes dividing members of `Y`, adjacent when their product
/// divides some member.
pub fn prime_graph<'a>(values: impl IntoIterator<Item = &'a u64>) -> PrimeGraph {
    let mut vertices = BTreeSet::new();
    let mut edges = BTreeSet::new();
    for &v in values {
        let ps = prime_divisors(v);
        for (i, &p) in ps.iter().enumerate() {
            vertices.insert(p);
            for &q in &ps[i + 1..] {
                edges.insert((p, q));
            }
        }
    }
    let index: BTreeMap<u64, usize> = vertices.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut dsu = Dsu::new(vertices.len());
    for (p, q) in &edges {
        dsu.union(index[p], index[q]);
    }
    let mut comps: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    for (&p, &i) in &index {
        comps.entry(dsu.find(i)).or_default().push(p);
    }
    let mut components: Vec<Vec<u64>> = comps.into_values().collect();
    components.sort();
    PrimeGraph {
        vertices,
        edges,
        components,
    }
}

/// `Γ(G)`.
pub fn vanishing_prime_graph(profile: &VanishingProfile) -> PrimeGraph {
    prime_graph(&profile.vo)
}

impl PrimeGraph {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }

    /// Graphviz rendering, components listed in a comment header.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let comps: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|p| p.to_string()).collect();
                format!("{{{}}}", inner.join(","))
            })
            .collect();
        let _ = writeln!(out, "// components ({}): {}", self.components.len(), comps.join(" "));
        let _ = writeln!(out, "graph \"{name}\" {{");
        for v in &self.vertices {
            let _ = writeln!(out, "  {v};");
        }
        for (p, q) in &self.edges {
            let _ = writeln!(out, "  {p} -- {q};");
        }
        out.push_str("}\n");
        out
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::character_table;
    use crate::classes::ClassData;
    use crate::config::Config;
    use crate::perm::Permutation;
    use crate::permgrp::PermGroup;

    fn profile(n: usize, gens: &[&str]) -> (CharacterTable, VanishingProfile) {
        let g = PermGroup::new(n, gens.iter().map(|s| Permutation::parse(s, n).unwrap()).collect())
            .unwrap();
        let cfg = Config::default();
        let cd = ClassData::new(&g, &cfg).unwrap();
        let t = character_table(&cd, &cfg).unwrap();
        let v = vanishing_profile(&t);
        (t, v)
    }

    #[test]
    fn gcd_max_examples() {
        assert_eq!(pairwise_gcd_max(&[2]), 0);
        assert_eq!(pairwise_gcd_max(&[]), 0);
        assert_eq!(pairwise_gcd_max(&[2, 3, 4]), 2);
        assert_eq!(pairwise_gcd_max(&[2, 3, 5, 5]), 5);
    }

    #[test]
    fn coprime_sets() {
        assert!(vo_pairwise_coprime(&[2, 3, 5].into()));
        assert!(!vo_pairwise_coprime(&[2, 3, 4].into()));
        assert!(vo_pairwise_coprime(&BTreeSet::new()));
        assert!(vo_pairwise_coprime(&[6].into()));
    }

    #[test]
    fn s3_profile() {
        let (t, v) = profile(3, &["(1 2)", "(1 2 3)"]);
        assert_eq!(v.orders, vec![2]);
        assert!(v.satisfies_star && v.satisfies_star_star && !v.vacuous);
        assert_eq!(v.pairwise_gcd_max, 0);
        assert_eq!(max_vanishing_classes_per_character(&t), 1);
        for w in &v.witnesses {
            assert!(t.values[w.row][w.class].is_zero());
        }
    }

    #[test]
    fn s4_profile() {
        let (t, v) = profile(4, &["(1 2)", "(1 2 3 4)"]);
        let mut orders = v.orders.clone();
        orders.sort();
        assert_eq!(orders, vec![2, 3, 4]);
        assert_eq!(v.pairwise_gcd_max, 2);
        assert!(!v.satisfies_star && v.satisfies_star_star);
        assert_eq!(max_vanishing_classes_per_character(&t), 2);
        let g = vanishing_prime_graph(&v);
        assert_eq!(g.component_count(), 2);
    }

    #[test]
    fn a5_profile() {
        let (t, v) = profile(5, &["(1 2 3)", "(3 4 5)"]);
        assert_eq!(v.orders, vec![2, 3, 5, 5]);
        assert_eq!(v.pairwise_gcd_max, 5);
        assert!(!v.satisfies_star_star);
        assert_eq!(v.vo, [2, 3, 5].into());
        assert!(v.vo_pairwise_coprime);
        assert_eq!(max_vanishing_classes_per_character(&t), 2);
        let g = vanishing_prime_graph(&v);
        assert_eq!(g.vertices, [2, 3, 5].into());
        assert!(g.edges.is_empty());
        assert_eq!(g.component_count(), 3);
    }

    #[test]
    fn abelian_profile_is_vacuous() {
        let (t, v) = profile(6, &["(1 2 3 4 5 6)"]);
        assert!(v.vacuous && v.satisfies_star && v.satisfies_star_star);
        assert_eq!(max_vanishing_classes_per_character(&t), 0);
        assert!(vanishing_prime_graph(&v).vertices.is_empty());
    }

    #[test]
    fn prime_graph_examples() {
        let g = prime_graph(&[2, 3, 4]);
        assert_eq!(g.vertices, [2, 3].into());
        assert!(g.edges.is_empty());
        assert_eq!(g.component_count(), 2);
        let g = prime_graph(&[6]);
        assert_eq!(g.edges, [(2, 3)].into());
        assert_eq!(g.component_count(), 1);
        let g = prime_graph(&[]);
        assert!(g.vertices.is_empty() && g.components.is_empty());
        let g = prime_graph(&[10, 21, 11]);
        assert_eq!(g.components, vec![vec![2, 5], vec![3, 7], vec![11]]);
    }

    #[test]
    fn dot_output() {
        let dot = prime_graph(&[2, 3, 4]).to_dot("S4");
        assert!(dot.starts_with("// components (2): {2} {3}\n"));
        assert!(dot.contains("  2;\n  3;\n"));
        assert!(!dot.contains("--"));
        assert!(prime_graph(&[6]).to_dot("x").contains("2 -- 3;"));
    }
}
