//! Normal-subgroup lattice and the structural invariants built on it:
//! series, Sylow subgroups, p-cores, Fitting series, supersolvability,
//! normal p-complements and isomorphism with a few small named groups.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::classes::ElementTable;
use crate::context::GroupContext;
use crate::error::{Error, Result};
use crate::numbers::{gcd, is_power_of, is_prime, p_part, prime_divisors};
use crate::perm::Permutation;
use crate::permgrp::PermGroup;

/// A normal subgroup recorded with its class decomposition in the parent.
#[derive(Debug, Clone, Serialize)]
pub struct NormalSubgroup {
    pub group: PermGroup,
    /// Parent class indices whose union is the subgroup, ascending.
    pub classes: Vec<usize>,
}

impl NormalSubgroup {
    pub fn order(&self) -> u64 {
        self.group.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.group.is_trivial()
    }

    /// `other ≤ self`.
    pub fn contains(&self, other: &NormalSubgroup) -> bool {
        other
            .classes
            .iter()
            .all(|c| self.classes.binary_search(c).is_ok())
    }

    /// Whether the intersection with `other` is trivial.
    pub fn meets_trivially(&self, other: &NormalSubgroup) -> bool {
        self.classes
            .iter()
            .all(|c| *c == 0 || other.classes.binary_search(c).is_err())
    }
}

/// All normal subgroups, sorted by (order, class set). The first member is
/// the trivial subgroup and the last is the whole group.
#[derive(Debug, Clone, Serialize)]
pub struct NormalSubgroupLattice {
    pub members: Vec<NormalSubgroup>,
}

impl NormalSubgroupLattice {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &NormalSubgroup> {
        self.members.iter()
    }

    pub fn trivial(&self) -> &NormalSubgroup {
        &self.members[0]
    }

    pub fn whole(&self) -> &NormalSubgroup {
        self.members.last().expect("lattice contains G")
    }

    pub fn by_classes(&self, classes: &[usize]) -> Option<&NormalSubgroup> {
        self.members.iter().find(|m| m.classes == classes)
    }

    /// The member equal to `sub`, if `sub` is normal.
    pub fn find(&self, ctx: &GroupContext, sub: &PermGroup) -> Option<&NormalSubgroup> {
        let classes = ctx.class_support(sub);
        self.by_classes(&classes)
            .filter(|m| m.order() == sub.order())
    }

    /// Members strictly between `lower` and `upper`.
    pub fn between<'a>(
        &'a self,
        lower: &'a NormalSubgroup,
        upper: &'a NormalSubgroup,
    ) -> impl Iterator<Item = &'a NormalSubgroup> + 'a {
        self.members.iter().filter(move |m| {
            m.order() > lower.order()
                && m.order() < upper.order()
                && m.contains(lower)
                && upper.contains(m)
        })
    }
}

/// Normal closures of single classes, closed under joins.
pub fn normal_subgroups(ctx: &GroupContext) -> Result<NormalSubgroupLattice> {
    let g = ctx.group();
    let cap = ctx.config().lattice_cap;
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut members: Vec<NormalSubgroup> = Vec::new();
    let mut push = |group: PermGroup, members: &mut Vec<NormalSubgroup>| -> Result<()> {
        let classes = ctx.class_support(&group);
        if seen.insert(classes.clone()) {
            if members.len() >= cap {
                return Err(Error::resource(
                    "normal-subgroup lattice size",
                    members.len() as u64 + 1,
                    cap as u64,
                ));
            }
            members.push(NormalSubgroup { group, classes });
        }
        Ok(())
    };
    push(PermGroup::trivial(g.degree()), &mut members)?;
    for class in ctx.classes().classes.iter().skip(1) {
        push(g.normal_closure(std::slice::from_ref(&class.representative)), &mut members)?;
    }
    let mut i = 1;
    while i < members.len() {
        for j in 1..i {
            let (a, b) = (&members[i], &members[j]);
            if a.contains(b) || b.contains(a) {
                continue;
            }
            let join = a.group.join_with(b.group.generators());
            push(join, &mut members)?;
        }
        i += 1;
    }
    members.sort_by(|a, b| (a.order(), &a.classes).cmp(&(b.order(), &b.classes)));
    Ok(NormalSubgroupLattice { members })
}

/// `G = G⁰ ≥ G′ ≥ G″ ≥ …`, stopping at the first repeat.
pub fn derived_series(g: &PermGroup) -> Vec<PermGroup> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().unwrap();
        let next = last.derived_subgroup();
        if next.order() == last.order() {
            return series;
        }
        series.push(next);
    }
}

/// `γ₁ = G`, `γ_{i+1} = [γ_i, G]`, stopping at the first repeat.
pub fn lower_central_series(g: &PermGroup) -> Vec<PermGroup> {
    let mut series = vec![g.clone()];
    loop {
        let last = series.last().unwrap();
        let next = g.commutator_subgroup(last, g);
        if next.order() == last.order() {
            return series;
        }
        series.push(next);
    }
}

pub fn is_solvable(g: &PermGroup) -> bool {
    derived_series(g).last().unwrap().is_trivial()
}

/// Number of derived steps down to 1, when solvable.
pub fn derived_length(g: &PermGroup) -> Option<usize> {
    let s = derived_series(g);
    s.last().unwrap().is_trivial().then(|| s.len() - 1)
}

pub fn is_nilpotent(g: &PermGroup) -> bool {
    lower_central_series(g).last().unwrap().is_trivial()
}

/// A Sylow `p`-subgroup, grown one normalizing `p`-element at a time.
pub fn sylow_subgroup(ctx: &GroupContext, p: u64) -> Result<PermGroup> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let target = p_part(ctx.order(), p);
    let cd = ctx.classes();
    let mut sylow = PermGroup::trivial(ctx.group().degree());
    while sylow.order() < target {
        let next = (0..cd.elements.len()).find_map(|i| {
            let x = cd.elements.get(i);
            let order = cd.classes[cd.class_of_index(i)].element_order;
            if order == 1 || !is_power_of(order, p) || sylow.contains(x) {
                return None;
            }
            let normalizes = sylow
                .generators()
                .iter()
                .all(|s| sylow.contains(&s.conjugate_by(x)));
            normalizes.then(|| sylow.join_with(std::slice::from_ref(x)))
        });
        sylow = next.ok_or_else(|| {
            Error::internal(format!("Sylow {p}-subgroup search stalled at order {}", sylow.order()))
        })?;
    }
    Ok(sylow)
}

/// `O_p(G)`: the largest normal `p`-subgroup.
pub fn p_core(ctx: &GroupContext, p: u64) -> Result<&NormalSubgroup> {
    let lattice = ctx.lattice()?;
    Ok(lattice
        .iter()
        .filter(|m| is_power_of(m.order(), p))
        .last()
        .unwrap_or(lattice.trivial()))
}

/// `F(G)`: the product of the `p`-cores.
pub fn fitting_subgroup(ctx: &GroupContext) -> Result<&NormalSubgroup> {
    let lattice = ctx.lattice()?;
    let mut f = PermGroup::trivial(ctx.group().degree());
    for p in prime_divisors(ctx.order()) {
        f = f.join_with(p_core(ctx, p)?.group.generators());
    }
    lattice
        .find(ctx, &f)
        .ok_or_else(|| Error::internal("Fitting subgroup missing from the lattice"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FittingHeight {
    Height(usize),
    /// The series stopped at a proper subgroup (non-solvable groups).
    StabilizedBelowG,
}

impl FittingHeight {
    pub fn height(&self) -> Option<usize> {
        match self {
            FittingHeight::Height(h) => Some(*h),
            FittingHeight::StabilizedBelowG => None,
        }
    }
}

impl fmt::Display for FittingHeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FittingHeight::Height(h) => write!(f, "{h}"),
            FittingHeight::StabilizedBelowG => f.write_str("stabilized-below-G"),
        }
    }
}

impl Serialize for FittingHeight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            FittingHeight::Height(h) => s.serialize_u64(*h as u64),
            FittingHeight::StabilizedBelowG => s.serialize_str("stabilized-below-G"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FittingSeries {
    /// `F₁ ≤ F₂ ≤ …`, each the preimage of the Fitting subgroup of the
    /// previous quotient.
    pub terms: Vec<PermGroup>,
    pub height: FittingHeight,
}

pub fn fitting_series(ctx: &GroupContext) -> Result<FittingSeries> {
    if ctx.group().is_trivial() {
        return Ok(FittingSeries {
            terms: vec![ctx.group().clone()],
            height: FittingHeight::Height(0),
        });
    }
    let mut terms = vec![fitting_subgroup(ctx)?.group.clone()];
    loop {
        let cur = terms.last().unwrap();
        if cur.order() == ctx.order() {
            let height = FittingHeight::Height(terms.len());
            return Ok(FittingSeries { terms, height });
        }
        if cur.is_trivial() {
            return Ok(FittingSeries {
                terms,
                height: FittingHeight::StabilizedBelowG,
            });
        }
        let q = ctx.quotient(cur)?;
        let fq = fitting_subgroup(&q.context)?;
        if fq.is_trivial() {
            return Ok(FittingSeries {
                terms,
                height: FittingHeight::StabilizedBelowG,
            });
        }
        let next = q.action.preimage(cur, &fq.group);
        terms.push(next);
    }
}

/// A chief series `1 = N₀ < N₁ < … < G` through the lattice, each step to a
/// minimal member above the previous one.
pub fn chief_series(ctx: &GroupContext) -> Result<Vec<&NormalSubgroup>> {
    let lattice = ctx.lattice()?;
    let mut series = vec![lattice.trivial()];
    loop {
        let cur = *series.last().unwrap();
        if cur.order() == ctx.order() {
            return Ok(series);
        }
        let above: Vec<&NormalSubgroup> = lattice
            .iter()
            .filter(|m| m.order() > cur.order() && m.contains(cur))
            .collect();
        let minimal = above
            .iter()
            .find(|m| !above.iter().any(|n| n.order() < m.order() && m.contains(n)))
            .ok_or_else(|| Error::internal("chief series: no member above current term"))?;
        series.push(minimal);
    }
}

/// Supersolvable iff every chief factor has prime order.
pub fn is_supersolvable(ctx: &GroupContext) -> Result<bool> {
    let series = chief_series(ctx)?;
    Ok(series
        .windows(2)
        .all(|w| is_prime(w[1].order() / w[0].order())))
}

/// A normal subgroup of index `|G|_p`, if one exists.
pub fn normal_p_complement(ctx: &GroupContext, p: u64) -> Result<Option<&NormalSubgroup>> {
    let target = ctx.order() / p_part(ctx.order(), p);
    Ok(ctx.lattice()?.iter().find(|m| m.order() == target))
}

/// Whether every Sylow subgroup of `g` is cyclic, tested by looking for an
/// element whose order has full `p`-part for each `p`.
pub fn has_cyclic_sylows(g: &PermGroup, cap: u64) -> Result<bool> {
    let n = g.order();
    let primes = prime_divisors(n);
    let mut found = vec![false; primes.len()];
    for x in g.elements(cap)? {
        let o = x.order();
        for (k, &p) in primes.iter().enumerate() {
            if !found[k] && p_part(o, p) == p_part(n, p) {
                found[k] = true;
            }
        }
        if found.iter().all(|&f| f) {
            return Ok(true);
        }
    }
    Ok(found.iter().all(|&f| f))
}

/// Small groups that can be recognised by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SmallType {
    Trivial,
    C2,
    V4,
    A4,
    S4,
    A5,
    S5,
}

impl SmallType {
    pub const ALL: [SmallType; 7] = [
        SmallType::Trivial,
        SmallType::C2,
        SmallType::V4,
        SmallType::A4,
        SmallType::S4,
        SmallType::A5,
        SmallType::S5,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SmallType::Trivial => "1",
            SmallType::C2 => "C2",
            SmallType::V4 => "V4",
            SmallType::A4 => "A4",
            SmallType::S4 => "S4",
            SmallType::A5 => "A5",
            SmallType::S5 => "S5",
        }
    }

    pub fn from_name(name: &str) -> Option<SmallType> {
        SmallType::ALL.into_iter().find(|t| t.name() == name)
    }

    pub fn order(&self) -> u64 {
        match self {
            SmallType::Trivial => 1,
            SmallType::C2 => 2,
            SmallType::V4 => 4,
            SmallType::A4 => 12,
            SmallType::S4 => 24,
            SmallType::A5 => 60,
            SmallType::S5 => 120,
        }
    }

    pub fn reference(&self) -> PermGroup {
        let (n, gens): (usize, &[&str]) = match self {
            SmallType::Trivial => (1, &[]),
            SmallType::C2 => (2, &["(1 2)"]),
            SmallType::V4 => (4, &["(1 2)(3 4)", "(1 3)(2 4)"]),
            SmallType::A4 => (4, &["(1 2 3)", "(2 3 4)"]),
            SmallType::S4 => (4, &["(1 2)", "(1 2 3 4)"]),
            SmallType::A5 => (5, &["(1 2 3)", "(3 4 5)"]),
            SmallType::S5 => (5, &["(1 2)", "(1 2 3 4 5)"]),
        };
        let gens = gens
            .iter()
            .map(|s| Permutation::parse(s, n).expect("reference generator"))
            .collect();
        PermGroup::new(n, gens).expect("reference group")
    }
}

impl fmt::Display for SmallType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for SmallType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// `is_isomorphic_named(G, name)` for the names of [`SmallType`].
pub fn is_isomorphic_named(g: &PermGroup, name: &str, cap: u64) -> Result<bool> {
    let t = SmallType::from_name(name)
        .ok_or_else(|| Error::invalid(format!("unknown named group {name:?}")))?;
    if g.order() != t.order() {
        return Ok(false);
    }
    is_isomorphic(g, &t.reference(), cap)
}

/// The [`SmallType`] isomorphic to `g`, if any.
pub fn small_type(g: &PermGroup, cap: u64) -> Result<Option<SmallType>> {
    for t in SmallType::ALL {
        if t.order() == g.order() && is_isomorphic(g, &t.reference(), cap)? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Generators of `g` with redundant ones dropped.
fn irredundant_generators(g: &PermGroup) -> Vec<Permutation> {
    let mut sub = PermGroup::trivial(g.degree());
    let mut out = Vec::new();
    for x in g.generators() {
        if !sub.contains(x) {
            sub = sub.join_with(std::slice::from_ref(x));
            out.push(x.clone());
        }
    }
    out
}

fn order_histogram(t: &ElementTable) -> BTreeMap<u64, usize> {
    let mut h = BTreeMap::new();
    for x in t.iter() {
        *h.entry(x.order()).or_insert(0) += 1;
    }
    h
}

/// Isomorphism test by backtracking over images of generators, each
/// candidate assignment checked edge by edge on the Cayley graph.
pub fn is_isomorphic(a: &PermGroup, b: &PermGroup, cap: u64) -> Result<bool> {
    if a.order() != b.order() {
        return Ok(false);
    }
    if a.is_trivial() {
        return Ok(true);
    }
    let ea = ElementTable::new(a, cap)?;
    let eb = ElementTable::new(b, cap)?;
    if order_histogram(&ea) != order_histogram(&eb) {
        return Ok(false);
    }
    let gens = irredundant_generators(a);
    let n = ea.len();
    let right: Vec<Vec<u32>> = gens
        .iter()
        .map(|s| {
            (0..n)
                .map(|x| ea.index_of(&ea.get(x).mul(s)).expect("closed") as u32)
                .collect()
        })
        .collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|s| {
            let o = s.order();
            (0..n).filter(|&y| eb.get(y).order() == o).collect()
        })
        .collect();
    let mut columns: HashMap<usize, Vec<u32>> = HashMap::new();
    let mut column = |y: usize| -> Vec<u32> {
        columns
            .entry(y)
            .or_insert_with(|| {
                let h = eb.get(y);
                (0..n)
                    .map(|x| eb.index_of(&eb.get(x).mul(h)).expect("closed") as u32)
                    .collect()
            })
            .clone()
    };
    let id_a = ea.index_of(&a.identity()).unwrap();
    let id_b = eb.index_of(&b.identity()).unwrap();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let cols: Vec<Vec<u32>> = choice
            .iter()
            .enumerate()
            .map(|(i, &c)| column(candidates[i][c]))
            .collect();
        if extends_to_isomorphism(&right, &cols, id_a, id_b, n) {
            return Ok(true);
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                return Ok(false);
            }
            choice[k] += 1;
            if choice[k] < candidates[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if candidates.iter().any(|c| c.is_empty()) {
            return Ok(false);
        }
    }
}

fn extends_to_isomorphism(
    right: &[Vec<u32>],
    cols: &[Vec<u32>],
    id_a: usize,
    id_b: usize,
    n: usize,
) -> bool {
    let mut phi = vec![u32::MAX; n];
    let mut used = vec![false; n];
    phi[id_a] = id_b as u32;
    used[id_b] = true;
    let mut queue = VecDeque::from([id_a]);
    while let Some(x) = queue.pop_front() {
        let fx = phi[x] as usize;
        for (r, c) in right.iter().zip(cols) {
            let y = r[x] as usize;
            let fy = c[fx];
            if phi[y] == u32::MAX {
                if used[fy as usize] {
                    return false;
                }
                used[fy as usize] = true;
                phi[y] = fy;
                queue.push_back(y);
            } else if phi[y] != fy {
                return false;
            }
        }
    }
    phi.iter().all(|&v| v != u32::MAX)
}

#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    pub order: u64,
    pub abelian: bool,
    pub nilpotent: bool,
    pub supersolvable: bool,
    pub solvable: bool,
    pub derived_length: Option<usize>,
    pub metabelian: bool,
    pub derived_series_orders: Vec<u64>,
    pub lower_central_series_orders: Vec<u64>,
    pub center_order: u64,
    pub normal_subgroup_count: usize,
    pub chief_factor_orders: Vec<u64>,
    pub fitting_subgroup: PermGroup,
    pub fitting_height: FittingHeight,
    pub fitting_series_orders: Vec<u64>,
    /// `|O_p(G)|` for each prime divisor `p`.
    pub p_core_orders: BTreeMap<u64, u64>,
    /// Order of a Sylow `p`-subgroup and whether it is normal.
    pub sylow_normal: BTreeMap<u64, bool>,
    pub normal_p_complements: BTreeMap<u64, Option<PermGroup>>,
    /// `G` itself when the order is odd.
    pub normal_2_complement: Option<PermGroup>,
}

impl StructureReport {
    pub fn normal_2_complement(&self) -> Option<&PermGroup> {
        self.normal_2_complement.as_ref()
    }
}

pub fn structure_report(ctx: &GroupContext) -> Result<StructureReport> {
    let g = ctx.group();
    let lattice = ctx.lattice()?;
    let derived = derived_series(g);
    let lower = lower_central_series(g);
    let derived_length = derived
        .last()
        .unwrap()
        .is_trivial()
        .then(|| derived.len() - 1);
    let chief = chief_series(ctx)?;
    let fitting = fitting_series(ctx)?;
    let primes = prime_divisors(ctx.order());
    let mut p_core_orders = BTreeMap::new();
    let mut sylow_normal = BTreeMap::new();
    let mut normal_p_complements = BTreeMap::new();
    for &p in &primes {
        let core = p_core(ctx, p)?.order();
        p_core_orders.insert(p, core);
        sylow_normal.insert(p, core == p_part(ctx.order(), p));
        normal_p_complements.insert(p, normal_p_complement(ctx, p)?.map(|m| m.group.clone()));
    }
    Ok(StructureReport {
        order: ctx.order(),
        abelian: ctx.is_abelian(),
        nilpotent: lower.last().unwrap().is_trivial(),
        supersolvable: chief
            .windows(2)
            .all(|w| is_prime(w[1].order() / w[0].order())),
        solvable: derived_length.is_some(),
        metabelian: derived_length.is_some_and(|d| d <= 2),
        derived_length,
        derived_series_orders: derived.iter().map(|h| h.order()).collect(),
        lower_central_series_orders: lower.iter().map(|h| h.order()).collect(),
        center_order: ctx.classes().classes.iter().filter(|c| c.size == 1).count() as u64,
        normal_subgroup_count: lattice.len(),
        chief_factor_orders: chief.windows(2).map(|w| w[1].order() / w[0].order()).collect(),
        fitting_subgroup: fitting_subgroup(ctx)?.group.clone(),
        fitting_series_orders: fitting.terms.iter().map(|h| h.order()).collect(),
        fitting_height: fitting.height,
        p_core_orders,
        sylow_normal,
        normal_2_complement: match normal_p_complements.get(&2) {
            Some(c) => c.clone(),
            None => Some(g.clone()),
        },
        normal_p_complements,
    })
}

/// Whether `gcd(|N|, |G:N|) = 1`.
pub fn is_hall(n: &NormalSubgroup, group_order: u64) -> bool {
    gcd(n.order(), group_order / n.order()) == 1
}
