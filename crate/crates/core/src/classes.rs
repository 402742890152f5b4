//! Conjugacy classes by orbit closure over the enumerated element set.

use std::collections::HashMap;

use serde::Serialize;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::numbers::lcm;
use crate::perm::Permutation;
use crate::permgrp::PermGroup;

/// All elements of a group with a reverse index.
pub struct ElementTable {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
}

impl ElementTable {
    pub fn new(group: &PermGroup, cap: u64) -> Result<Self> {
        let elements = group.elements(cap)?;
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), i as u32))
            .collect();
        Ok(ElementTable { elements, index })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Permutation> {
        self.elements.iter()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjugacyClass {
    pub index: usize,
    pub representative: Permutation,
    pub size: u64,
    pub element_order: u64,
    /// `power_map[s]` is the class of `representative^s`, for `s` in `0..e`.
    #[serde(skip)]
    pub power_map: Vec<usize>,
}

/// Conjugacy classes of a group together with the element-to-class map.
pub struct ClassData {
    pub group_order: u64,
    pub classes: Vec<ConjugacyClass>,
    pub elements: ElementTable,
    /// Class index of each element, parallel to `elements`.
    class_of_element: Vec<u32>,
    /// Element indices of each class, in element-table order.
    members: Vec<Vec<u32>>,
    exponent: u64,
}

impl ClassData {
    /// Partitions the elements of `group` into conjugacy classes.
    ///
    /// Classes are sorted by (element order, size, least representative
    /// image array); the identity class is index 0. Power maps are filled
    /// for exponents `0..e`, `e` being the group exponent.
    pub fn new(group: &PermGroup, config: &Config) -> Result<Self> {
        let elements = ElementTable::new(group, config.element_cap)?;
        let n = elements.len();
        let mut raw_class = vec![u32::MAX; n];
        let mut raw_members: Vec<Vec<u32>> = Vec::new();
        for start in 0..n {
            if raw_class[start] != u32::MAX {
                continue;
            }
            let c = raw_members.len() as u32;
            raw_class[start] = c;
            let mut orbit = vec![start as u32];
            let mut head = 0;
            while head < orbit.len() {
                let x = elements.get(orbit[head] as usize).clone();
                head += 1;
                for g in group.generators() {
                    let y = x.conjugate_by(g);
                    let j = elements
                        .index_of(&y)
                        .ok_or_else(|| Error::internal("conjugate left the element table"))?;
                    if raw_class[j] == u32::MAX {
                        raw_class[j] = c;
                        orbit.push(j as u32);
                    }
                }
            }
            orbit.sort_unstable();
            raw_members.push(orbit);
        }

        struct Raw {
            order: u64,
            size: u64,
            rep: usize,
            members: Vec<u32>,
        }
        let mut raw: Vec<Raw> = raw_members
            .into_iter()
            .map(|members| {
                let rep = *members
                    .iter()
                    .min_by(|&&a, &&b| {
                        elements
                            .get(a as usize)
                            .images()
                            .cmp(elements.get(b as usize).images())
                    })
                    .expect("classes are nonempty") as usize;
                Raw {
                    order: elements.get(rep).order(),
                    size: members.len() as u64,
                    rep,
                    members,
                }
            })
            .collect();
        raw.sort_by(|a, b| {
            (a.order, a.size)
                .cmp(&(b.order, b.size))
                .then_with(|| elements.get(a.rep).images().cmp(elements.get(b.rep).images()))
        });

        let mut class_of_element = vec![0u32; n];
        for (ci, r) in raw.iter().enumerate() {
            for &m in &r.members {
                class_of_element[m as usize] = ci as u32;
            }
        }
        let exponent = raw.iter().fold(1, |acc, r| lcm(acc, r.order));
        let mut classes = Vec::with_capacity(raw.len());
        let mut members = Vec::with_capacity(raw.len());
        for (ci, r) in raw.into_iter().enumerate() {
            let rep = elements.get(r.rep).clone();
            let mut power_map = Vec::with_capacity(exponent as usize);
            let mut pw = Permutation::identity(rep.degree());
            for _ in 0..exponent {
                let j = elements
                    .index_of(&pw)
                    .ok_or_else(|| Error::internal("power left the element table"))?;
                power_map.push(class_of_element[j] as usize);
                pw = pw.mul(&rep);
            }
            classes.push(ConjugacyClass {
                index: ci,
                representative: rep,
                size: r.size,
                element_order: r.order,
                power_map,
            });
            members.push(r.members);
        }
        Ok(ClassData {
            group_order: group.order(),
            classes,
            elements,
            class_of_element,
            members,
            exponent,
        })
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Lcm of the element orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Class index of `g`, or an error when `g` is not in the group.
    pub fn class_of(&self, g: &Permutation) -> Result<usize> {
        self.elements
            .index_of(g)
            .map(|i| self.class_of_element[i] as usize)
            .ok_or_else(|| Error::invalid(format!("{g} is not an element of the group")))
    }

    pub fn class_of_index(&self, element: usize) -> usize {
        self.class_of_element[element] as usize
    }

    /// Element-table indices of the members of class `c`.
    pub fn members(&self, c: usize) -> &[u32] {
        &self.members[c]
    }

    pub fn centralizer_order(&self, c: usize) -> u64 {
        self.group_order / self.classes[c].size
    }

    /// Class of `g⁻¹` for `g` in class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        let cl = &self.classes[c];
        cl.power_map[(cl.element_order as usize - 1) % self.exponent as usize]
    }

    /// Class of `rep_c ^ s` for any `s ≥ 0`.
    pub fn power_class(&self, c: usize, s: u64) -> usize {
        self.classes[c].power_map[(s % self.exponent) as usize]
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() as u64 == self.group_order
    }
}

/// `conjugacy_classes(G)`.
pub fn conjugacy_classes(group: &PermGroup, config: &Config) -> Result<Vec<ConjugacyClass>> {
    Ok(ClassData::new(group, config)?.classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    fn group(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::new(n, gens.iter().map(|g| p(g, n)).collect()).unwrap()
    }

    /// Brute-force partition: x ~ y iff some g has x^g = y.
    fn brute_classes(g: &PermGroup) -> Vec<(u64, u64)> {
        let elems = g.elements(10_000).unwrap();
        let mut seen = vec![false; elems.len()];
        let mut out = Vec::new();
        for i in 0..elems.len() {
            if seen[i] {
                continue;
            }
            let mut size = 0;
            for j in 0..elems.len() {
                if elems.iter().any(|h| elems[i].conjugate_by(h) == elems[j]) {
                    seen[j] = true;
                    size += 1;
                }
            }
            out.push((elems[i].order(), size));
        }
        out.sort();
        out
    }

    #[test]
    fn s4_classes() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let cd = ClassData::new(&s4, &Config::default()).unwrap();
        let sizes: Vec<u64> = cd.classes.iter().map(|c| c.size).collect();
        let orders: Vec<u64> = cd.classes.iter().map(|c| c.element_order).collect();
        assert_eq!(orders, vec![1, 2, 2, 3, 4]);
        // ties in (order) broken by size: double transpositions (3) before transpositions (6)
        assert_eq!(sizes, vec![1, 3, 6, 8, 6]);
        let mut bf: Vec<(u64, u64)> = cd.classes.iter().map(|c| (c.element_order, c.size)).collect();
        bf.sort();
        assert_eq!(bf, brute_classes(&s4));
        assert_eq!(cd.exponent(), 12);
    }

    #[test]
    fn class_lookup() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let cd = ClassData::new(&s4, &Config::default()).unwrap();
        let t = cd.class_of(&p("(1 3)", 4)).unwrap();
        assert_eq!(cd.classes[t].size, 6);
        assert_eq!(cd.classes[t].element_order, 2);
        let dt = cd.class_of(&p("(1 2)(3 4)", 4)).unwrap();
        assert_eq!(cd.classes[dt].size, 3);
        let a4 = group(4, &["(1 2 3)", "(2 3 4)"]);
        let cd4 = ClassData::new(&a4, &Config::default()).unwrap();
        assert!(cd4.class_of(&p("(1 2)", 4)).is_err());
    }

    #[test]
    fn a5_has_two_five_classes() {
        let a5 = group(5, &["(1 2 3)", "(3 4 5)"]);
        let cd = ClassData::new(&a5, &Config::default()).unwrap();
        let orders: Vec<u64> = cd.classes.iter().map(|c| c.element_order).collect();
        assert_eq!(orders, vec![1, 2, 3, 5, 5]);
        let x = p("(1 2 3 4 5)", 5);
        let c1 = cd.class_of(&x).unwrap();
        let c2 = cd.class_of(&x.pow(2)).unwrap();
        assert_ne!(c1, c2);
        assert_eq!(cd.power_class(c1, 2), c2);
    }

    #[test]
    fn cyclic_classes_are_singletons() {
        let c5 = group(5, &["(1 2 3 4 5)"]);
        let cd = ClassData::new(&c5, &Config::default()).unwrap();
        assert_eq!(cd.len(), 5);
        assert!(cd.classes.iter().all(|c| c.size == 1));
        assert!(cd.is_abelian());
    }

    #[test]
    fn class_invariants() {
        let m = group(6, &["(1 2)", "(1 2 3 4 5 6)"]);
        let cd = ClassData::new(&m, &Config::default()).unwrap();
        assert_eq!(cd.classes[0].element_order, 1);
        let total: u64 = cd.classes.iter().map(|c| c.size).sum();
        assert_eq!(total, 720);
        for c in &cd.classes {
            assert_eq!(720 % c.size, 0);
            assert_eq!(c.power_map[1], c.index);
            assert_eq!(c.power_map[0], 0);
            assert_eq!(c.element_order, c.representative.order());
            let direct = m.centralizer_order(&c.representative, 1000).unwrap();
            assert_eq!(direct * c.size, 720);
            assert_eq!(cd.centralizer_order(c.index), direct);
            for &e in cd.members(c.index) {
                assert_eq!(cd.class_of_index(e as usize), c.index);
            }
        }
    }
}
