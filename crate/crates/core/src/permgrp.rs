//! Permutation groups backed by a deterministic Schreier–Sims stabilizer
//! chain, plus the basic subgroup constructions built on top of it.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Clone)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    /// Orbit of `base` in BFS order.
    orbit: Vec<u32>,
    /// `transversal[β]` maps `base` to `β`.
    transversal: HashMap<u32, Permutation>,
}

impl Level {
    fn new(base: usize) -> Self {
        Level {
            base,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: HashMap::new(),
        }
    }

    fn rebuild(&mut self, degree: usize) {
        self.orbit.clear();
        self.transversal.clear();
        self.orbit.push(self.base as u32);
        self.transversal
            .insert(self.base as u32, Permutation::identity(degree));
        let mut head = 0;
        while head < self.orbit.len() {
            let beta = self.orbit[head];
            head += 1;
            for s in &self.gens {
                let gamma = s.image(beta as usize) as u32;
                if !self.transversal.contains_key(&gamma) {
                    let u = self.transversal[&beta].mul(s);
                    self.transversal.insert(gamma, u);
                    self.orbit.push(gamma);
                }
            }
        }
    }
}

/// Base and strong generating set with orbit transversals.
#[derive(Clone)]
pub(crate) struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    fn new(degree: usize) -> Self {
        StabChain {
            degree,
            levels: Vec::new(),
        }
    }

    /// Sifts `g` starting at level `start`. Returns the residue and the level
    /// at which sifting stopped (`levels.len()` when every level passed).
    fn strip(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let beta = h.image(level.base) as u32;
            match level.transversal.get(&beta) {
                Some(u) => h = h.mul(&u.inverse()),
                None => return (h, l),
            }
        }
        (h, self.levels.len())
    }

    fn contains(&self, g: &Permutation) -> bool {
        let (h, j) = self.strip(g, 0);
        j == self.levels.len() && h.is_identity()
    }

    /// Adds `g` to the group, restoring the strong-generation property.
    /// Returns false when `g` already belonged to the group.
    fn extend(&mut self, g: &Permutation) -> bool {
        let (h, j) = self.strip(g, 0);
        if j == self.levels.len() && h.is_identity() {
            return false;
        }
        self.absorb(h, 0, j);
        self.close_from(j);
        true
    }

    /// Adds residue `h` (which fixes the first `from` base points) to levels
    /// `from..=to`, creating a new level when `to` is past the end.
    fn absorb(&mut self, h: Permutation, from: usize, to: usize) {
        if to == self.levels.len() {
            let point = h
                .first_moved_point()
                .expect("nonidentity residue moves a point");
            self.levels.push(Level::new(point));
        }
        for m in from..=to {
            self.levels[m].gens.push(h.clone());
            self.levels[m].rebuild(self.degree);
        }
    }

    fn close_from(&mut self, start: usize) {
        let mut i = start as isize;
        'outer: while i >= 0 {
            let l = i as usize;
            let orbit = self.levels[l].orbit.clone();
            let gens = self.levels[l].gens.clone();
            for &beta in &orbit {
                let u_beta = self.levels[l].transversal[&beta].clone();
                for s in &gens {
                    let gamma = s.image(beta as usize) as u32;
                    let u_gamma = &self.levels[l].transversal[&gamma];
                    let schreier = u_beta.mul(s).mul(&u_gamma.inverse());
                    if schreier.is_identity() {
                        continue;
                    }
                    let (h, j) = self.strip(&schreier, l + 1);
                    if j < self.levels.len() || !h.is_identity() {
                        self.absorb(h, l + 1, j);
                        i = j as isize;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
    }

    fn order(&self) -> Option<u64> {
        self.levels
            .iter()
            .try_fold(1u64, |acc, l| acc.checked_mul(l.orbit.len() as u64))
    }
}

/// A finite permutation group given by generators.
///
/// Subgroups live on the same degree as their parent; quotients built with
/// [`coset_action`] get a fresh degree equal to the index.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    order: u64,
}

impl PermGroup {
    /// Builds the group generated by `generators` on `degree` points.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::invalid("group degree must be at least 1"));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::invalid(format!(
                "generator {g} has degree {}, expected {degree}",
                g.degree()
            )));
        }
        let mut chain = StabChain::new(degree);
        for g in &generators {
            chain.extend(g);
        }
        let order = chain
            .order()
            .ok_or_else(|| Error::resource("group order overflows u64", u64::MAX, u64::MAX))?;
        Ok(PermGroup {
            degree,
            generators,
            chain,
            order,
        })
    }

    /// `build_group`: the degree is taken from the generators.
    pub fn from_generators(generators: Vec<Permutation>) -> Result<Self> {
        let degree = generators
            .first()
            .map(|g| g.degree())
            .ok_or_else(|| Error::invalid("cannot infer degree from an empty generator list"))?;
        Self::new(degree, generators)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new()).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.chain.contains(g)
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.base).collect()
    }

    /// Orbit lengths of the stabilizer chain; their product is the order.
    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.chain.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Subgroup on the same degree generated by `gens`.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermGroup> {
        PermGroup::new(self.degree, gens)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.is_subgroup_of(other)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].mul(&g[j]) == g[j].mul(&g[i])))
    }

    /// Whether `self` is normalized by every generator of `parent`.
    pub fn is_normal_in(&self, parent: &PermGroup) -> bool {
        self.is_subgroup_of(parent)
            && parent.generators.iter().all(|x| {
                self.generators
                    .iter()
                    .all(|n| self.contains(&n.conjugate_by(x)))
            })
    }

    /// Every element exactly once, in transversal-product order.
    pub fn elements(&self, cap: u64) -> Result<Vec<Permutation>> {
        if self.order > cap {
            return Err(Error::resource(
                "element enumeration: group order",
                self.order,
                cap,
            ));
        }
        let mut elems = vec![self.identity()];
        for level in self.chain.levels.iter().rev() {
            let mut next = Vec::with_capacity(elems.len() * level.orbit.len());
            for beta in &level.orbit {
                let u = &level.transversal[beta];
                next.extend(elems.iter().map(|h| h.mul(u)));
            }
            elems = next;
        }
        Ok(elems)
    }

    /// Group generated by `self` and `extra`, on the same degree.
    pub fn join_with(&self, extra: &[Permutation]) -> PermGroup {
        let mut out = self.clone();
        for g in extra {
            if out.chain.extend(g) {
                out.generators.push(g.clone());
            }
        }
        out.order = out.chain.order().expect("subgroup of a group with u64 order");
        out
    }

    /// Smallest normal subgroup of `self` containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> PermGroup {
        let mut closure = PermGroup::trivial(self.degree);
        let mut queue: Vec<Permutation> = seeds.to_vec();
        while let Some(g) = queue.pop() {
            if closure.contains(&g) {
                continue;
            }
            closure = closure.join_with(std::slice::from_ref(&g));
            for x in &self.generators {
                queue.push(g.conjugate_by(x));
            }
        }
        closure
    }

    /// `[A, B]` for subgroups `a`, `b` normal in `self`: normal closure of the
    /// commutators of their generators.
    pub fn commutator_subgroup(&self, a: &PermGroup, b: &PermGroup) -> PermGroup {
        let mut seeds = Vec::new();
        for x in &a.generators {
            for y in &b.generators {
                let c = x.commutator(y);
                if !c.is_identity() {
                    seeds.push(c);
                }
            }
        }
        self.normal_closure(&seeds)
    }

    /// `G′`: normal closure of the commutators of generator pairs.
    pub fn derived_subgroup(&self) -> PermGroup {
        self.commutator_subgroup(self, self)
    }

    /// `Z(G)`, found by scanning the elements for ones commuting with every
    /// generator.
    pub fn center(&self, cap: u64) -> Result<PermGroup> {
        let central: Vec<Permutation> = self
            .elements(cap)?
            .into_iter()
            .filter(|z| {
                !z.is_identity() && self.generators.iter().all(|g| g.mul(z) == z.mul(g))
            })
            .collect();
        let mut out = PermGroup::trivial(self.degree);
        for z in central {
            if !out.contains(&z) {
                out = out.join_with(std::slice::from_ref(&z));
            }
        }
        Ok(out)
    }

    /// `|C_G(g)|` by direct element scan.
    pub fn centralizer_order(&self, g: &Permutation, cap: u64) -> Result<u64> {
        if !self.contains(g) {
            return Err(Error::invalid(format!("{g} is not an element of the group")));
        }
        Ok(self
            .elements(cap)?
            .iter()
            .filter(|x| x.mul(g) == g.mul(x))
            .count() as u64)
    }

    /// Cycle-notation strings of the generators.
    pub fn generator_strings(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.to_string()).collect()
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(order {}, degree {}, gens [", self.order, self.degree)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "])")
    }
}

#[derive(Serialize)]
struct GroupJson {
    order: u64,
    degree: usize,
    generators: Vec<String>,
}

impl Serialize for PermGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GroupJson {
            order: self.order,
            degree: self.degree,
            generators: self.generator_strings(),
        }
        .serialize(s)
    }
}

/// Right-multiplication action of `G` on the right cosets `Ng` of a normal
/// subgroup `N`. Its image is a faithful copy of `G/N` of degree `|G:N|`.
pub struct CosetAction {
    pub quotient: PermGroup,
    index: HashMap<Permutation, usize>,
    coset_of: Vec<usize>,
    reps: Vec<Permutation>,
}

impl CosetAction {
    /// Image of `g ∈ G` in the quotient.
    pub fn image(&self, g: &Permutation) -> Result<Permutation> {
        let degree = self.reps.len();
        let mut images = Vec::with_capacity(degree);
        for r in &self.reps {
            let idx = self
                .index
                .get(&r.mul(g))
                .ok_or_else(|| Error::invalid(format!("{g} is not an element of the group")))?;
            images.push(self.coset_of[*idx] as u32);
        }
        Ok(Permutation::from_images_unchecked(images))
    }

    /// Image of a subgroup of `G` in the quotient.
    pub fn image_group(&self, sub: &PermGroup) -> Result<PermGroup> {
        let gens = sub
            .generators()
            .iter()
            .map(|g| self.image(g))
            .collect::<Result<Vec<_>>>()?;
        self.quotient.subgroup(gens)
    }

    /// Coset index of `g` (the point its coset occupies).
    pub fn coset_index(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).map(|&i| self.coset_of[i])
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    /// Coset representatives, one per quotient point.
    pub fn representatives(&self) -> &[Permutation] {
        &self.reps
    }

    /// Full preimage in `G` of a subgroup of the quotient, generated by the
    /// kernel and lifts of the subgroup's generators.
    pub fn preimage(&self, kernel: &PermGroup, sub: &PermGroup) -> PermGroup {
        let lifts: Vec<Permutation> = sub
            .generators()
            .iter()
            .map(|q| self.reps[q.image(0)].clone())
            .collect();
        // the quotient acts regularly, so q is fixed by where it sends coset 0
        kernel.join_with(&lifts)
    }
}

/// `G/N` via the action of `G` on the right cosets of `N`.
pub fn coset_action(group: &PermGroup, normal: &PermGroup, config: &Config) -> Result<CosetAction> {
    if !normal.is_normal_in(group) {
        return Err(Error::invalid("coset_action requires a normal subgroup"));
    }
    let index = group.order() / normal.order();
    if index > config.quotient_degree_cap {
        return Err(Error::resource(
            "coset action: quotient degree",
            index,
            config.quotient_degree_cap,
        ));
    }
    let elems = group.elements(config.element_cap)?;
    let kernel_elems = normal.elements(config.element_cap)?;
    let lookup: HashMap<Permutation, usize> = elems
        .iter()
        .enumerate()
        .map(|(i, g)| (g.clone(), i))
        .collect();
    let mut coset_of = vec![usize::MAX; elems.len()];
    let mut reps: Vec<Permutation> = Vec::with_capacity(index as usize);
    for (i, g) in elems.iter().enumerate() {
        if coset_of[i] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(g.clone());
        for n in &kernel_elems {
            coset_of[lookup[&n.mul(g)]] = c;
        }
    }
    debug_assert_eq!(reps.len() as u64, index);
    let degree = reps.len();
    let mut gens = Vec::with_capacity(group.generators().len());
    for s in group.generators() {
        let images: Vec<u32> = reps
            .iter()
            .map(|r| coset_of[lookup[&r.mul(s)]] as u32)
            .collect();
        gens.push(Permutation::from_images_unchecked(images));
    }
    let quotient = PermGroup::new(degree, gens)?;
    if quotient.order() != index {
        return Err(Error::internal(format!(
            "coset action image has order {}, expected index {index}",
            quotient.order()
        )));
    }
    Ok(CosetAction {
        quotient,
        index: lookup,
        coset_of,
        reps,
    })
}
