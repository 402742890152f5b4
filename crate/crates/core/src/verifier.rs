//! Theorem harness: per-group verdicts for the vanishing-order theorems and
//! the lemmas they rest on, aggregated over a corpus.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::analysis::Analysis;
use crate::catalog::NamedGroup;
use crate::config::Config;
use crate::error::{Error, Result};
use crate::frobenius::{
    complement_classification, is_2_frobenius, is_nearly_2_frobenius, SectionAnalyzer,
};
use crate::numbers::{gcd, is_prime, p_part, prime_divisors};
use crate::permgrp::PermGroup;
use crate::structure::{
    derived_length, derived_series, fitting_series, is_nilpotent, small_type, NormalSubgroup,
    SmallType,
};
use crate::vanishing::{pairwise_gcd_max, prime_graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    A,
    B,
    C,
    L2_1,
    L2_2,
    C2_3,
    L2_4,
    L2_5,
    L2_6,
    Brauer,
    T2_10,
    T4_1,
    T4_2,
    L2_9,
}

impl TheoremId {
    /// Per-group checks, in report order.
    pub const GROUP_CHECKS: [TheoremId; 13] = [
        TheoremId::A,
        TheoremId::B,
        TheoremId::C,
        TheoremId::L2_1,
        TheoremId::L2_2,
        TheoremId::C2_3,
        TheoremId::L2_4,
        TheoremId::L2_5,
        TheoremId::L2_6,
        TheoremId::Brauer,
        TheoremId::T2_10,
        TheoremId::T4_1,
        TheoremId::T4_2,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::A => "A",
            TheoremId::B => "B",
            TheoremId::C => "C",
            TheoremId::L2_1 => "L2.1",
            TheoremId::L2_2 => "L2.2",
            TheoremId::C2_3 => "C2.3",
            TheoremId::L2_4 => "L2.4",
            TheoremId::L2_5 => "L2.5",
            TheoremId::L2_6 => "L2.6",
            TheoremId::Brauer => "Brauer",
            TheoremId::T2_10 => "T2.10",
            TheoremId::T4_1 => "T4.1",
            TheoremId::T4_2 => "T4.2",
            TheoremId::L2_9 => "L2.9",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    Flagged,
    Resource,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not-applicable",
            Status::Flagged => "flagged",
            Status::Resource => "resource",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremVerdict {
    pub group: String,
    pub theorem: TheoremId,
    pub status: Status,
    pub witness: Value,
}

type Outcome = (Status, Value);

fn not_applicable(hypothesis: &str) -> Outcome {
    (Status::NotApplicable, json!({ "hypothesis": hypothesis }))
}

fn verdict_of(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

/// Runs one per-group check, turning errors into `resource` (caps) or
/// `fail` (anything else) verdicts.
pub fn check(id: TheoremId, a: &Analysis) -> TheoremVerdict {
    let outcome = match id {
        TheoremId::A => Ok(theorem_a(a)),
        TheoremId::B => theorem_b(a),
        TheoremId::C => Ok(corollary_c(a)),
        TheoremId::L2_1 => lemma_2_1(a),
        TheoremId::L2_2 => lemma_2_2(a),
        TheoremId::C2_3 => corollary_2_3(a),
        TheoremId::L2_4 => lemma_2_4(a),
        TheoremId::L2_5 => lemma_2_5(a),
        TheoremId::L2_6 => lemma_2_6(a),
        TheoremId::Brauer => Ok(brauer(a)),
        TheoremId::T2_10 => theorem_2_10(a),
        TheoremId::T4_1 => theorem_4_1(a),
        TheoremId::T4_2 => theorem_4_2(a),
        TheoremId::L2_9 => Ok(lemma_2_9_outcome(LEMMA_2_9_LIMIT)),
    };
    let (status, witness) = outcome.unwrap_or_else(error_outcome);
    TheoremVerdict {
        group: a.name.clone(),
        theorem: id,
        status,
        witness,
    }
}

fn error_outcome(e: Error) -> Outcome {
    let status = if e.is_resource() { Status::Resource } else { Status::Fail };
    (status, json!({ "error": e.to_string(), "kind": e.kind() }))
}

/// All per-group checks, in theorem order.
pub fn check_all(a: &Analysis) -> Vec<TheoremVerdict> {
    TheoremId::GROUP_CHECKS.iter().map(|&id| check(id, a)).collect()
}

fn theorem_a(a: &Analysis) -> Outcome {
    let p = a.profile();
    if !p.satisfies_star_star {
        return not_applicable("(**)");
    }
    let s = &a.structure;
    (
        verdict_of(s.solvable),
        json!({
            "vanishing_orders": p.orders,
            "pairwise_gcd_max": p.pairwise_gcd_max,
            "vacuous": p.vacuous,
            "solvable": s.solvable,
            "derived_series_orders": s.derived_series_orders,
        }),
    )
}

fn theorem_b(a: &Analysis) -> Result<Outcome> {
    let p = a.profile();
    let s = &a.structure;
    if s.abelian || !p.satisfies_star_star {
        return Ok(not_applicable("non-abelian with (**)"));
    }
    let o2 = s.p_core_orders.get(&2).copied().unwrap_or(1);
    if !s.supersolvable && o2 != 1 {
        return Ok(not_applicable("supersolvable or O2(G) = 1"));
    }
    let complement = s.normal_2_complement();
    let mut status = Status::Pass;
    let mut witness = serde_json::Map::new();
    witness.insert("supersolvable".into(), json!(s.supersolvable));
    witness.insert("o2_order".into(), json!(o2));
    witness.insert("complement_order".into(), json!(complement.map(|c| c.order())));
    if s.supersolvable {
        let dl = complement.and_then(derived_length);
        let metabelian = dl.is_some_and(|d| d <= 2);
        witness.insert("a".into(), json!({ "complement_derived_length": dl, "metabelian": metabelian }));
        if !metabelian {
            status = Status::Fail;
        }
    }
    if o2 == 1 {
        let height = match complement {
            Some(c) => fitting_series(&a.context.subgroup_context(c)?)?.height.height(),
            None => None,
        };
        if height.is_some_and(|h| h <= 3) {
            witness.insert("b".into(), json!({ "branch": "i", "complement_fitting_height": height }));
        } else {
            let s4 = match &a.frobenius {
                Some(d) if d.kernel_abelian => {
                    small_type(&d.complement, a.context.config().element_cap)? == Some(SmallType::S4)
                }
                _ => false,
            };
            if s4 {
                witness.insert(
                    "b".into(),
                    json!({
                        "branch": "ii",
                        "kernel": a.frobenius.as_ref().map(|d| &d.kernel),
                        "complement": a.frobenius.as_ref().map(|d| &d.complement),
                    }),
                );
                if status == Status::Pass {
                    status = Status::Flagged;
                }
            } else {
                witness.insert(
                    "b".into(),
                    json!({ "branch": null, "complement_fitting_height": height }),
                );
                status = Status::Fail;
            }
        }
    }
    Ok((status, Value::Object(witness)))
}

fn corollary_c(a: &Analysis) -> Outcome {
    if a.structure.abelian {
        return not_applicable("non-abelian");
    }
    let p = a.profile();
    let rhs = a
        .frobenius
        .as_ref()
        .is_some_and(|d| d.kernel_abelian && d.complement_order == 2);
    (
        verdict_of(p.satisfies_star == rhs),
        json!({
            "satisfies_star": p.satisfies_star,
            "vanishing_orders": p.orders,
            "pairwise_gcd_max": p.pairwise_gcd_max,
            "frobenius_abelian_kernel_order_two_complement": rhs,
            "kernel_order": a.frobenius.as_ref().map(|d| d.kernel.order()),
            "complement_order": a.frobenius.as_ref().map(|d| d.complement_order),
        }),
    )
}

fn proper_nontrivial<'a>(a: &'a Analysis) -> Result<Vec<&'a NormalSubgroup>> {
    let n = a.order();
    Ok(a
        .context
        .lattice()?
        .iter()
        .filter(|m| m.order() > 1 && m.order() < n)
        .collect())
}

fn lemma_2_1(a: &Analysis) -> Result<Outcome> {
    let normals = proper_nontrivial(a)?;
    if normals.is_empty() {
        return Ok(not_applicable("proper non-trivial normal subgroup"));
    }
    let profile = a.profile();
    let classes = &a.context.classes().classes;
    let (mut checked, mut skipped) = (0usize, 0usize);
    for n in normals {
        let q = match a.context.quotient(&n.group) {
            Ok(q) => q,
            Err(e) if e.is_resource() => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let qp = match q.context.vanishing_profile() {
            Ok(p) => p,
            Err(e) if e.is_resource() => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        checked += 1;
        for c in classes {
            let qc = q.context.classes().class_of(&q.action.image(&c.representative)?)?;
            if qp.is_vanishing(qc) && !profile.is_vanishing(c.index) {
                return Ok((
                    Status::Fail,
                    json!({ "normal_subgroup": n.classes, "class": c.index, "quotient_class": qc }),
                ));
            }
        }
        let inherits = (!profile.satisfies_star || qp.satisfies_star)
            && (!profile.satisfies_star_star || qp.satisfies_star_star);
        if !inherits {
            return Ok((
                Status::Fail,
                json!({
                    "normal_subgroup": n.classes,
                    "quotient_pairwise_gcd_max": qp.pairwise_gcd_max,
                    "pairwise_gcd_max": profile.pairwise_gcd_max,
                }),
            ));
        }
    }
    if checked == 0 {
        return Ok((Status::Resource, json!({ "checked": 0, "skipped": skipped })));
    }
    Ok((Status::Pass, json!({ "checked": checked, "skipped": skipped })))
}

fn lemma_2_2(a: &Analysis) -> Result<Outcome> {
    if !a.structure.solvable {
        return Ok(not_applicable("solvable"));
    }
    let lattice = a.context.lattice()?;
    let sections = SectionAnalyzer::new(&a.context);
    let trivial = lattice.trivial();
    let mut instances = Vec::new();
    for n in lattice.iter().filter(|n| n.order() > 1) {
        for m in lattice.iter().filter(|m| m.order() > n.order() && m.contains(n)) {
            let diff: Vec<usize> = m
                .classes
                .iter()
                .copied()
                .filter(|c| n.classes.binary_search(c).is_err())
                .collect();
            if diff.len() != 1 {
                continue;
            }
            let index = m.order() / n.order();
            if gcd(index, n.order()) == 1 {
                let holds = is_prime(index) && sections.is_frobenius_section(trivial, n, m)?;
                instances.push(json!({
                    "part": "a", "n": n.classes, "m": m.classes, "holds": holds,
                }));
                if !holds {
                    return Ok((Status::Fail, instances.pop().unwrap()));
                }
            }
            if m.order() == a.order() {
                let holds = index == 2
                    && n.group.is_abelian()
                    && sections.is_frobenius_section(trivial, n, m)?;
                instances.push(json!({
                    "part": "b", "n": n.classes, "m": m.classes, "holds": holds,
                }));
                if !holds {
                    return Ok((Status::Fail, instances.pop().unwrap()));
                }
            }
        }
    }
    if instances.is_empty() {
        return Ok(not_applicable("normal N < M with M \\ N a single class"));
    }
    Ok((Status::Pass, json!({ "instances": instances })))
}

fn corollary_2_3(a: &Analysis) -> Result<Outcome> {
    let profile = a.profile();
    let classes = &a.context.classes().classes;
    let mut checked = Vec::new();
    for k in a.context.lattice()?.iter() {
        if k.order() == 1 || !is_nilpotent(&k.group) {
            continue;
        }
        let van: Vec<usize> = k
            .classes
            .iter()
            .copied()
            .filter(|&c| profile.is_vanishing(c))
            .collect();
        if van.is_empty() {
            continue;
        }
        let primes = prime_divisors(k.order());
        let found = van
            .iter()
            .copied()
            .find(|&c| primes.iter().all(|p| classes[c].element_order % p == 0));
        match found {
            Some(c) => checked.push(json!({ "k": k.classes, "class": c })),
            None => {
                return Ok((
                    Status::Fail,
                    json!({ "k": k.classes, "vanishing_classes_in_k": van, "primes": primes }),
                ))
            }
        }
    }
    if checked.is_empty() {
        return Ok(not_applicable("nilpotent normal K meeting Van(G)"));
    }
    Ok((Status::Pass, json!({ "instances": checked })))
}

fn lemma_2_4(a: &Analysis) -> Result<Outcome> {
    if !a.structure.solvable {
        return Ok(not_applicable("solvable"));
    }
    let series = fitting_series(&a.context)?;
    let f = &series.terms[0];
    let penultimate = (series.terms.len() >= 2).then(|| &series.terms[series.terms.len() - 2]);
    let profile = a.profile();
    let mut nonvanishing = Vec::new();
    for c in &a.context.classes().classes {
        if profile.is_vanishing(c.index) {
            continue;
        }
        nonvanishing.push(c.index);
        let x = &c.representative;
        let odd_part = x.pow(p_part(c.element_order, 2));
        if !f.contains(&odd_part) {
            return Ok((
                Status::Fail,
                json!({ "class": c.index, "claim": "xF(G) is a 2-element" }),
            ));
        }
        if let Some(pen) = penultimate {
            if !pen.contains(x) {
                return Ok((
                    Status::Fail,
                    json!({ "class": c.index, "claim": "x lies in the penultimate Fitting term" }),
                ));
            }
        }
    }
    Ok((
        Status::Pass,
        json!({
            "non_vanishing_classes": nonvanishing,
            "fitting_series_orders": series.terms.iter().map(PermGroup::order).collect::<Vec<_>>(),
        }),
    ))
}

fn defect_zero_rows(table: &crate::chartab::CharacterTable, p: u64) -> Vec<usize> {
    (0..table.len())
        .filter(|&r| table.degrees[r] > 1 && table.is_p_defect_zero(r, p))
        .collect()
}

fn lemma_2_5(a: &Analysis) -> Result<Outcome> {
    let simple = !a.structure.abelian && a.context.lattice()?.len() == 2;
    if !simple {
        return Ok(not_applicable("non-abelian simple"));
    }
    let lie = a.tags.contains("lie-type");
    let table = a.table();
    let mut rows = BTreeMap::new();
    for p in prime_divisors(a.order()) {
        if !(lie || p >= 5) {
            continue;
        }
        let r = defect_zero_rows(table, p);
        if r.is_empty() {
            return Ok((Status::Fail, json!({ "prime": p, "lie_type": lie })));
        }
        rows.insert(p.to_string(), json!({ "row": r[0], "degree": table.degrees[r[0]] }));
    }
    if rows.is_empty() {
        return Ok(not_applicable("Lie type or p >= 5"));
    }
    Ok((Status::Pass, json!({ "lie_type": lie, "defect_zero": rows })))
}

fn lemma_2_6(a: &Analysis) -> Result<Outcome> {
    let profile = a.profile();
    let classes = &a.context.classes().classes;
    let mut instances = Vec::new();
    let mut skipped = 0usize;
    for n in a.context.lattice()?.iter().filter(|n| n.order() > 1) {
        let sub;
        let table = if n.order() == a.order() {
            a.table()
        } else {
            sub = match a.context.subgroup_context(&n.group) {
                Ok(c) => c,
                Err(e) if e.is_resource() => {
                    skipped += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            match sub.character_table() {
                Ok(t) => t,
                Err(e) if e.is_resource() => {
                    skipped += 1;
                    continue;
                }
                Err(e) => return Err(e),
            }
        };
        for p in prime_divisors(n.order()) {
            let rows = defect_zero_rows(table, p);
            if rows.is_empty() {
                continue;
            }
            for &c in &n.classes {
                if classes[c].element_order % p == 0 && !profile.is_vanishing(c) {
                    return Ok((
                        Status::Fail,
                        json!({ "n": n.classes, "prime": p, "row_of_n": rows[0], "class": c }),
                    ));
                }
            }
            instances.push(json!({ "n": n.classes, "prime": p, "row_of_n": rows[0] }));
        }
    }
    if instances.is_empty() {
        if skipped > 0 {
            return Ok((Status::Resource, json!({ "skipped": skipped })));
        }
        return Ok(not_applicable("normal N with a p-defect-zero character"));
    }
    Ok((Status::Pass, json!({ "instances": instances, "skipped": skipped })))
}

fn brauer(a: &Analysis) -> Outcome {
    let table = a.table();
    let mut checked = 0usize;
    for p in prime_divisors(a.order()) {
        for r in (0..table.len()).filter(|&r| table.is_p_defect_zero(r, p)) {
            checked += 1;
            for (c, class) in table.classes.iter().enumerate() {
                if class.element_order % p == 0 && !table.values[r][c].is_zero() {
                    return (
                        Status::Fail,
                        json!({ "prime": p, "row": r, "class": c, "value": table.values[r][c].to_string() }),
                    );
                }
            }
        }
    }
    if checked == 0 {
        return not_applicable("character of p-defect zero");
    }
    (Status::Pass, json!({ "defect_zero_rows_checked": checked }))
}

/// `K/Z` is abelian: every commutator of generators of `K` lies in `Z`.
fn abelian_mod(k: &PermGroup, z: &PermGroup) -> bool {
    let g = k.generators();
    g.iter().all(|x| g.iter().all(|y| z.contains(&x.commutator(y))))
}

fn theorem_2_10(a: &Analysis) -> Result<Outcome> {
    if a.structure.abelian {
        return Ok(not_applicable("non-abelian"));
    }
    let zeros = crate::vanishing::max_vanishing_classes_per_character(a.table());
    if zeros > 2 {
        return Ok(not_applicable("every irreducible character vanishes on at most two classes"));
    }
    let lattice = a.context.lattice()?;
    if !a.structure.solvable {
        let simple = lattice.len() == 2;
        let ok = simple && (a.order() == 60 || a.order() == 168);
        let name = if a.order() == 60 { "A5" } else { "PSL(2,7)" };
        return Ok((
            verdict_of(ok),
            json!({ "case": if ok { json!("a") } else { Value::Null }, "order": a.order(), "simple": simple, "matches": name }),
        ));
    }
    let sections = SectionAnalyzer::new(&a.context);
    let g = a.context.group();
    let n = a.order();
    let small: Vec<&NormalSubgroup> = lattice.iter().filter(|z| z.order() <= 2).collect();
    for &z in &small {
        for k in lattice.iter() {
            let kz = k.order() / z.order();
            if n / k.order() != 2 || !k.contains(z) || kz % 2 == 0 {
                continue;
            }
            if abelian_mod(&k.group, &z.group) && sections.is_frobenius_section(z, k, lattice.whole())? {
                return Ok((
                    Status::Pass,
                    json!({ "case": "b(i)", "z": z.classes, "kernel": k.classes }),
                ));
            }
        }
    }
    let classes = &a.context.classes().classes;
    for &z in &small {
        for f in lattice.iter() {
            let index = n / f.order();
            if index > 2 || !f.contains(z) {
                continue;
            }
            if index == 2 {
                let has_involution_outside = classes.iter().any(|c| {
                    f.classes.binary_search(&c.index).is_err()
                        && z.group.contains(&c.representative.pow(2))
                });
                if !has_involution_outside {
                    continue;
                }
            }
            for k in lattice.iter() {
                if f.order() / k.order() != 3 || !f.contains(k) || !k.contains(z) {
                    continue;
                }
                let g2 = g.commutator_subgroup(&k.group, &k.group);
                let g3 = g.commutator_subgroup(&g2, &k.group);
                if !g3.is_subgroup_of(&z.group) {
                    continue;
                }
                if sections.is_frobenius_section(z, k, f)? {
                    return Ok((
                        Status::Pass,
                        json!({ "case": "b(ii)", "z": z.classes, "f": f.classes, "kernel": k.classes }),
                    ));
                }
            }
        }
    }
    Ok((Status::Fail, json!({ "case": null, "max_zeros_per_row": zeros })))
}

fn theorem_4_1(a: &Analysis) -> Result<Outcome> {
    if !a.structure.solvable {
        return Ok(not_applicable("solvable"));
    }
    let graph = a.prime_graph();
    let comps = graph.component_count();
    if comps > 2 {
        return Ok((Status::Fail, json!({ "components": graph.components })));
    }
    if comps < 2 {
        return Ok((Status::Pass, json!({ "components": graph.components })));
    }
    if let Some(d) = &a.frobenius {
        return Ok((
            Status::Pass,
            json!({
                "components": graph.components,
                "frobenius": { "kernel_order": d.kernel.order(), "complement_order": d.complement_order },
            }),
        ));
    }
    if let Some(w) = is_2_frobenius(&a.context)? {
        return Ok((
            Status::Pass,
            json!({
                "components": graph.components,
                "two_frobenius": { "f": w.f.order(), "l": w.l.order() },
            }),
        ));
    }
    match is_nearly_2_frobenius(&a.context)? {
        Some(w) => Ok((
            Status::Pass,
            json!({
                "components": graph.components,
                "nearly_2_frobenius": {
                    "f": w.f.order(), "f1": w.f1.order(), "f2": w.f2.order(), "l": w.l.order(),
                },
            }),
        )),
        None => Ok((
            Status::Fail,
            json!({ "components": graph.components, "frobenius": null, "nearly_2_frobenius": null }),
        )),
    }
}

fn theorem_4_2(a: &Analysis) -> Result<Outcome> {
    let Some(d) = &a.frobenius else {
        return Ok(not_applicable("Frobenius group"));
    };
    match complement_classification(&d.complement, &a.context)? {
        Some(c) => Ok((
            Status::Pass,
            json!({
                "complement_order": d.complement_order,
                "normal_order": c.normal.order(),
                "quotient_type": c.quotient_type,
            }),
        )),
        None => Ok((Status::Fail, json!({ "complement": d.complement }))),
    }
}

/// `f < (q − 2)/2` for `q = p^f ≥ 32`.
pub fn lemma_2_9(p: u64, f: u32) -> Result<bool> {
    if !is_prime(p) || f == 0 {
        return Err(Error::invalid("lemma_2_9 needs a prime p and f ≥ 1"));
    }
    let q = p
        .checked_pow(f)
        .ok_or_else(|| Error::invalid("p^f overflows"))?;
    if q < 32 {
        return Err(Error::invalid(format!("q = {q} is below 32")));
    }
    Ok(2 * (f as u64) + 2 < q)
}

pub const LEMMA_2_9_LIMIT: u64 = 1_000_000;

fn lemma_2_9_outcome(limit: u64) -> Outcome {
    let mut sieve = vec![true; limit as usize + 1];
    let mut checked = 0u64;
    for p in 2..=limit as usize {
        if !sieve[p] {
            continue;
        }
        for m in (p * p..=limit as usize).step_by(p) {
            sieve[m] = false;
        }
        let mut q = p as u64;
        let mut f = 1u32;
        while q <= limit {
            if q >= 32 {
                checked += 1;
                if !lemma_2_9(p as u64, f).unwrap_or(false) {
                    return (Status::Fail, json!({ "p": p, "f": f, "q": q }));
                }
            }
            q *= p as u64;
            f += 1;
        }
    }
    (Status::Pass, json!({ "prime_powers_checked": checked, "limit": limit }))
}

/// Counts by status.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub flagged: usize,
    pub na: usize,
    pub resource: usize,
}

impl Summary {
    pub fn add(&mut self, s: Status) {
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::Flagged => self.flagged += 1,
            Status::NotApplicable => self.na += 1,
            Status::Resource => self.resource += 1,
        }
    }

    pub fn of<'a>(verdicts: impl IntoIterator<Item = &'a TheoremVerdict>) -> Self {
        let mut s = Summary::default();
        for v in verdicts {
            s.add(v.status);
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupVerdicts {
    pub group: String,
    pub order: u64,
    pub verdicts: Vec<TheoremVerdict>,
    pub summary: Summary,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub groups: Vec<GroupVerdicts>,
    /// Group-independent checks.
    pub arithmetic: Vec<TheoremVerdict>,
    pub by_theorem: BTreeMap<TheoremId, Summary>,
    pub summary: Summary,
}

impl VerificationReport {
    /// 1 when any check failed, else 3 when any hit a cap, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.resource > 0 {
            3
        } else {
            0
        }
    }

    pub fn verdicts(&self) -> impl Iterator<Item = &TheoremVerdict> {
        self.groups
            .iter()
            .flat_map(|g| g.verdicts.iter())
            .chain(self.arithmetic.iter())
    }
}

fn verify_group(named: &NamedGroup, config: &Config) -> GroupVerdicts {
    let verdicts = match Analysis::new(named, config) {
        Ok(a) => check_all(&a),
        Err(e) => {
            let (status, witness) = error_outcome(e);
            TheoremId::GROUP_CHECKS
                .iter()
                .map(|&theorem| TheoremVerdict {
                    group: named.name.clone(),
                    theorem,
                    status,
                    witness: witness.clone(),
                })
                .collect()
        }
    };
    GroupVerdicts {
        group: named.name.clone(),
        order: named.order,
        summary: Summary::of(&verdicts),
        verdicts,
    }
}

/// All checks on all groups, spread across threads. The report is sorted by
/// group name and does not depend on scheduling.
pub fn run_corpus(corpus: &[NamedGroup], config: &Config) -> VerificationReport {
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(corpus.len().max(1));
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<GroupVerdicts>> = Mutex::new(Vec::with_capacity(corpus.len()));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(named) = corpus.get(i) else { break };
                let v = verify_group(named, config);
                results.lock().unwrap().push(v);
            });
        }
    });
    let mut groups = results.into_inner().unwrap();
    groups.sort_by(|a, b| a.group.cmp(&b.group).then(a.order.cmp(&b.order)));
    let (status, witness) = lemma_2_9_outcome(LEMMA_2_9_LIMIT);
    let arithmetic = vec![TheoremVerdict {
        group: "(arithmetic)".into(),
        theorem: TheoremId::L2_9,
        status,
        witness,
    }];
    let mut by_theorem: BTreeMap<TheoremId, Summary> = BTreeMap::new();
    let mut summary = Summary::default();
    for v in groups.iter().flat_map(|g| g.verdicts.iter()).chain(arithmetic.iter()) {
        by_theorem.entry(v.theorem).or_default().add(v.status);
        summary.add(v.status);
    }
    VerificationReport {
        groups,
        arithmetic,
        by_theorem,
        summary,
    }
}

/// Re-derives a verdict from a fresh analysis of the same group and, for
/// `fail`/`flagged` verdicts, re-checks the witness facts directly against
/// the group. True when the verdict stands.
pub fn replay(verdict: &TheoremVerdict, named: &NamedGroup, config: &Config) -> Result<bool> {
    let fresh = Analysis::new(named, config)?;
    let again = check(verdict.theorem, &fresh);
    if again.status != verdict.status || again.witness != verdict.witness {
        return Ok(false);
    }
    if !matches!(verdict.status, Status::Fail | Status::Flagged) {
        return Ok(true);
    }
    replay_facts(verdict, &fresh)
}

fn replay_facts(verdict: &TheoremVerdict, a: &Analysis) -> Result<bool> {
    let w = &verdict.witness;
    let table = a.table();
    let zero_orders = || -> Vec<u64> {
        (0..table.class_count())
            .filter(|&c| (0..table.len()).any(|r| table.values[r][c].is_zero()))
            .map(|c| table.classes[c].element_order)
            .collect()
    };
    Ok(match verdict.theorem {
        TheoremId::A => {
            let star_star = pairwise_gcd_max(&zero_orders()) <= 2;
            let solvable = derived_series(a.context.group()).last().unwrap().is_trivial();
            star_star && !solvable && w["solvable"] == json!(false)
        }
        TheoremId::C => {
            let star = pairwise_gcd_max(&zero_orders()) <= 1;
            w["satisfies_star"] == json!(star)
                && w["frobenius_abelian_kernel_order_two_complement"] != json!(star)
        }
        TheoremId::Brauer => {
            let (p, r, c) = (
                w["prime"].as_u64().unwrap_or(0),
                w["row"].as_u64().unwrap_or(0) as usize,
                w["class"].as_u64().unwrap_or(0) as usize,
            );
            r < table.len()
                && c < table.class_count()
                && table.is_p_defect_zero(r, p)
                && table.classes[c].element_order % p == 0
                && !table.values[r][c].is_zero()
        }
        TheoremId::T4_1 => {
            let orders = zero_orders();
            let graph = prime_graph(&orders);
            graph.component_count() > 2
                || (graph.component_count() == 2
                    && a.frobenius.is_none()
                    && is_nearly_2_frobenius(&a.context)?.is_none())
        }
        TheoremId::B if verdict.status == Status::Flagged => match &a.frobenius {
            Some(d) => {
                d.kernel.is_abelian()
                    && small_type(&d.complement, a.context.config().element_cap)?
                        == Some(SmallType::S4)
            }
            None => false,
        },
        _ => true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{lookup, make};

    fn analysis(name: &str) -> Analysis {
        Analysis::new(&lookup(name).unwrap(), &Config::default()).unwrap()
    }

    fn status(a: &Analysis, id: TheoremId) -> Status {
        check(id, a).status
    }

    #[test]
    fn theorem_a_examples() {
        assert_eq!(status(&analysis("S4"), TheoremId::A), Status::Pass);
        assert_eq!(status(&analysis("A5"), TheoremId::A), Status::NotApplicable);
        let d8 = analysis("D8");
        let v = check(TheoremId::A, &d8);
        assert_eq!(v.status, Status::Pass);
        assert_eq!(v.witness["pairwise_gcd_max"], json!(2));
    }

    #[test]
    fn theorem_b_examples() {
        let d12 = check(TheoremId::B, &analysis("D12"));
        assert_eq!(d12.status, Status::Pass);
        assert_eq!(d12.witness["complement_order"], json!(3));
        let d10 = check(TheoremId::B, &analysis("D10"));
        assert_eq!(d10.status, Status::Pass);
        assert_eq!(d10.witness["b"]["branch"], json!("i"));
        assert_eq!(status(&analysis("S4"), TheoremId::B), Status::NotApplicable);
    }

    #[test]
    fn corollary_c_examples() {
        for name in ["S3", "S4", "D10", "D14"] {
            assert_eq!(status(&analysis(name), TheoremId::C), Status::Pass, "{name}");
        }
        assert_eq!(status(&analysis("C6"), TheoremId::C), Status::NotApplicable);
    }

    #[test]
    fn a5_suite() {
        let a = analysis("A5");
        assert_eq!(status(&a, TheoremId::L2_5), Status::Pass);
        let t = check(TheoremId::T2_10, &a);
        assert_eq!(t.status, Status::Pass);
        assert_eq!(t.witness["case"], json!("a"));
        assert_eq!(status(&a, TheoremId::T4_1), Status::NotApplicable);
    }

    #[test]
    fn s4_suite() {
        let a = analysis("S4");
        let t = check(TheoremId::T4_1, &a);
        assert_eq!(t.status, Status::Pass);
        assert_eq!(t.witness["two_frobenius"]["f"], json!(4));
        assert_eq!(t.witness["two_frobenius"]["l"], json!(12));
        assert_eq!(status(&a, TheoremId::L2_4), Status::Pass);
        for v in check_all(&a) {
            assert_ne!(v.status, Status::Fail, "{v:?}");
        }
    }

    #[test]
    fn lemma_2_9_examples() {
        assert!(lemma_2_9(2, 5).unwrap());
        assert!(lemma_2_9(37, 1).unwrap());
        assert!(lemma_2_9(3, 2).is_err());
        assert!(lemma_2_9(4, 3).is_err());
        assert_eq!(lemma_2_9_outcome(10_000).0, Status::Pass);
    }

    #[test]
    fn small_corpus_report() {
        let corpus: Vec<NamedGroup> = ["symmetric:4", "symmetric:3", "dihedral:5"]
            .iter()
            .map(|s| make(s).unwrap())
            .collect();
        let r = run_corpus(&corpus, &Config::default());
        let names: Vec<&str> = r.groups.iter().map(|g| g.group.as_str()).collect();
        assert_eq!(names, vec!["D10", "S3", "S4"]);
        assert_eq!(r.by_theorem[&TheoremId::C].pass, 3);
        assert_eq!(r.summary.fail, 0);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn forged_failure_does_not_replay() {
        let named = lookup("S4").unwrap();
        let mut a = Analysis::new(&named, &Config::default()).unwrap();
        a.structure.solvable = false;
        let v = check(TheoremId::A, &a);
        assert_eq!(v.status, Status::Fail);
        assert!(!replay(&v, &named, &Config::default()).unwrap());
        let honest = check(TheoremId::A, &analysis("S4"));
        assert!(replay(&honest, &named, &Config::default()).unwrap());
    }
}
