//! Frobenius, 2-Frobenius and nearly 2-Frobenius structure, and the
//! normal-subgroup shape of Frobenius complements.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use serde::Serialize;

use crate::context::{GroupContext, Quotient};
use crate::error::{Error, Result};
use crate::numbers::gcd;
use crate::perm::Permutation;
use crate::permgrp::PermGroup;
use crate::structure::{has_cyclic_sylows, is_nilpotent, small_type, NormalSubgroup, SmallType};

/// `G = K ⋊ H` with `C_K(h) = 1` for every `h ∈ H \ 1`.
#[derive(Debug, Clone, Serialize)]
pub struct FrobeniusDecomposition {
    pub kernel: PermGroup,
    pub complement: PermGroup,
    pub kernel_abelian: bool,
    pub complement_order: u64,
}

/// Whether `G` is a Frobenius group with kernel `k`, returning a complement
/// when it is.
pub fn frobenius_with_kernel(
    ctx: &GroupContext,
    k: &PermGroup,
) -> Result<Option<FrobeniusDecomposition>> {
    let n = ctx.order();
    let kn = k.order();
    if kn == 1 || kn == n || n % kn != 0 {
        return Ok(None);
    }
    let m = n / kn;
    if gcd(kn, m) != 1 || (kn - 1) % m != 0 || !k.is_normal_in(ctx.group()) {
        return Ok(None);
    }
    let Some(h) = find_complement(ctx, kn, m)? else {
        return Ok(None);
    };
    if !acts_fixed_point_freely(ctx, k, &h)? {
        return Ok(None);
    }
    Ok(Some(FrobeniusDecomposition {
        kernel_abelian: k.is_abelian(),
        complement_order: h.order(),
        kernel: k.clone(),
        complement: h,
    }))
}

/// A subgroup of order `m`, built greedily from elements of order coprime
/// to the kernel. Any such subgroup lies in some complement, so a single
/// pass over the elements suffices.
fn find_complement(ctx: &GroupContext, kernel_order: u64, m: u64) -> Result<Option<PermGroup>> {
    let cd = ctx.classes();
    let cap = ctx.config().search_cap;
    let mut h = PermGroup::trivial(ctx.group().degree());
    let mut builds = 0u64;
    for i in 0..cd.elements.len() {
        if h.order() == m {
            break;
        }
        let order = cd.classes[cd.class_of_index(i)].element_order;
        let x = cd.elements.get(i);
        if order == 1 || gcd(order, kernel_order) != 1 || m % order != 0 || h.contains(x) {
            continue;
        }
        builds += 1;
        if builds > cap {
            return Err(Error::resource("complement search: subgroup builds", builds, cap));
        }
        let j = h.join_with(std::slice::from_ref(x));
        if m % j.order() == 0 {
            h = j;
        }
    }
    Ok((h.order() == m).then_some(h))
}

/// `C_K(h) = 1` for each non-identity `h ∈ H`.
fn acts_fixed_point_freely(ctx: &GroupContext, k: &PermGroup, h: &PermGroup) -> Result<bool> {
    let cap = ctx.config().element_cap;
    let kernel: Vec<Permutation> = k
        .elements(cap)?
        .into_iter()
        .filter(|x| !x.is_identity())
        .collect();
    for y in h.elements(cap)? {
        if y.is_identity() {
            continue;
        }
        if kernel.iter().any(|x| x.mul(&y) == y.mul(x)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The decomposition with the smallest kernel, if `G` is a Frobenius group.
pub fn frobenius_decomposition(ctx: &GroupContext) -> Result<Option<FrobeniusDecomposition>> {
    let n = ctx.order();
    for k in ctx.lattice()?.iter() {
        if k.order() == 1 || k.order() == n || gcd(k.order(), n / k.order()) != 1 {
            continue;
        }
        if let Some(d) = frobenius_with_kernel(ctx, &k.group)? {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

/// Checks a returned decomposition from scratch.
pub fn verify_decomposition(ctx: &GroupContext, d: &FrobeniusDecomposition) -> Result<bool> {
    let g = ctx.group();
    let (k, h) = (&d.kernel, &d.complement);
    if !k.is_normal_in(g) || !h.is_subgroup_of(g) || k.order() * h.order() != ctx.order() {
        return Ok(false);
    }
    if gcd(k.order(), h.order()) != 1 || k.order() % h.order() != 1 % h.order() {
        return Ok(false);
    }
    if d.kernel_abelian != k.is_abelian() || d.complement_order != h.order() {
        return Ok(false);
    }
    acts_fixed_point_freely(ctx, k, h)
}

/// Normal subgroups `F < L` of `G` with `G/F` Frobenius with kernel `L/F`
/// and `L` Frobenius with kernel `F`.
#[derive(Debug, Clone, Serialize)]
pub struct TwoFrobeniusWitness {
    pub f: PermGroup,
    pub l: PermGroup,
}

/// Normal `F₁`, `F₂` with `F = F₁F₂` nilpotent and `F₁ ∩ F₂ = 1`, and a
/// normal `L` such that `G/F` and `G/F₁` are Frobenius with kernels `L/F`
/// and `L/F₁` while `G/F₂` is 2-Frobenius.
#[derive(Debug, Clone, Serialize)]
pub struct NearlyTwoFrobeniusWitness {
    pub f: PermGroup,
    pub f1: PermGroup,
    pub f2: PermGroup,
    pub l: PermGroup,
    /// Orders of the 2-Frobenius pair of `G/F₂`.
    pub quotient_pair_orders: (u64, u64),
}

/// Frobenius tests on sections `T/B` of `G` with `B ≤ T` normal in `G`,
/// sharing quotient contexts between queries.
pub struct SectionAnalyzer<'a> {
    ctx: &'a GroupContext,
    quotients: RefCell<HashMap<Vec<usize>, Rc<Quotient>>>,
    verdicts: RefCell<HashMap<(Vec<usize>, Vec<usize>, Vec<usize>), bool>>,
}

impl<'a> SectionAnalyzer<'a> {
    pub fn new(ctx: &'a GroupContext) -> Self {
        SectionAnalyzer {
            ctx,
            quotients: RefCell::new(HashMap::new()),
            verdicts: RefCell::new(HashMap::new()),
        }
    }

    fn quotient(&self, n: &NormalSubgroup) -> Result<Rc<Quotient>> {
        if let Some(q) = self.quotients.borrow().get(&n.classes) {
            return Ok(q.clone());
        }
        let q = Rc::new(self.ctx.quotient(&n.group)?);
        self.quotients.borrow_mut().insert(n.classes.clone(), q.clone());
        Ok(q)
    }

    /// Whether `top/bottom` is Frobenius with kernel `kernel/bottom`.
    pub fn is_frobenius_section(
        &self,
        bottom: &NormalSubgroup,
        kernel: &NormalSubgroup,
        top: &NormalSubgroup,
    ) -> Result<bool> {
        if !(kernel.contains(bottom) && top.contains(kernel))
            || kernel.order() == bottom.order()
            || kernel.order() == top.order()
        {
            return Ok(false);
        }
        let (kn, m) = (kernel.order() / bottom.order(), top.order() / kernel.order());
        if gcd(kn, m) != 1 || (kn - 1) % m != 0 {
            return Ok(false);
        }
        let key = (bottom.classes.clone(), kernel.classes.clone(), top.classes.clone());
        if let Some(&v) = self.verdicts.borrow().get(&key) {
            return Ok(v);
        }
        let whole = top.order() == self.ctx.order();
        let verdict = if bottom.is_trivial() {
            if whole {
                frobenius_with_kernel(self.ctx, &kernel.group)?.is_some()
            } else {
                let sub = self.ctx.subgroup_context(&top.group)?;
                frobenius_with_kernel(&sub, &kernel.group)?.is_some()
            }
        } else {
            let q = self.quotient(bottom)?;
            let k_img = q.action.image_group(&kernel.group)?;
            if whole {
                frobenius_with_kernel(&q.context, &k_img)?.is_some()
            } else {
                let t_img = q.action.image_group(&top.group)?;
                let sub = q.context.subgroup_context(&t_img)?;
                frobenius_with_kernel(&sub, &k_img)?.is_some()
            }
        };
        self.verdicts.borrow_mut().insert(key, verdict);
        Ok(verdict)
    }

    /// 2-Frobenius pairs `(F, L)` of `G/bottom`, as members of the lattice
    /// of `G` lying above `bottom`. The first in lattice order.
    fn two_frobenius_above(
        &self,
        bottom: &'a NormalSubgroup,
    ) -> Result<Option<(&'a NormalSubgroup, &'a NormalSubgroup)>> {
        let lattice = self.ctx.lattice()?;
        let whole = lattice.whole();
        for f in lattice.between(bottom, whole) {
            for l in lattice.between(f, whole) {
                if self.is_frobenius_section(f, l, whole)?
                    && self.is_frobenius_section(bottom, f, l)?
                {
                    return Ok(Some((f, l)));
                }
            }
        }
        Ok(None)
    }
}

pub fn is_2_frobenius(ctx: &GroupContext) -> Result<Option<TwoFrobeniusWitness>> {
    let sections = SectionAnalyzer::new(ctx);
    let trivial = ctx.lattice()?.trivial();
    Ok(sections
        .two_frobenius_above(trivial)?
        .map(|(f, l)| TwoFrobeniusWitness {
            f: f.group.clone(),
            l: l.group.clone(),
        }))
}

pub fn is_nearly_2_frobenius(ctx: &GroupContext) -> Result<Option<NearlyTwoFrobeniusWitness>> {
    let sections = SectionAnalyzer::new(ctx);
    let lattice = ctx.lattice()?;
    let whole = lattice.whole();
    for f2 in lattice.iter() {
        if f2.order() == ctx.order() {
            continue;
        }
        let mut inner: Option<Option<(&NormalSubgroup, &NormalSubgroup)>> = None;
        for f1 in lattice.iter() {
            if f1.order() == ctx.order() || !f1.meets_trivially(f2) {
                continue;
            }
            let join = f1.group.join_with(f2.group.generators());
            let Some(f) = lattice.find(ctx, &join) else {
                continue;
            };
            if f.order() != f1.order() * f2.order() || !is_nilpotent(&f.group) {
                continue;
            }
            for l in lattice.between(f, whole) {
                if !sections.is_frobenius_section(f, l, whole)?
                    || !sections.is_frobenius_section(f1, l, whole)?
                {
                    continue;
                }
                let pair = match inner {
                    Some(p) => p,
                    None => *inner.insert(sections.two_frobenius_above(f2)?),
                };
                if let Some((a, b)) = pair {
                    return Ok(Some(NearlyTwoFrobeniusWitness {
                        f: f.group.clone(),
                        f1: f1.group.clone(),
                        f2: f2.group.clone(),
                        l: l.group.clone(),
                        quotient_pair_orders: (a.order() / f2.order(), b.order() / f2.order()),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// A normal `N ⊴ H` with all Sylow subgroups cyclic and `H/N` of a listed
/// type.
#[derive(Debug, Clone, Serialize)]
pub struct ComplementClass {
    pub normal: PermGroup,
    pub quotient_type: SmallType,
}

const COMPLEMENT_TYPES: [SmallType; 6] = [
    SmallType::Trivial,
    SmallType::V4,
    SmallType::A4,
    SmallType::S4,
    SmallType::A5,
    SmallType::S5,
];

/// The witness with the smallest quotient, or `None` when no normal
/// subgroup of `h` qualifies.
pub fn complement_classification(
    h: &PermGroup,
    ctx: &GroupContext,
) -> Result<Option<ComplementClass>> {
    let hctx = ctx.subgroup_context(h)?;
    let cap = ctx.config().element_cap;
    for n in hctx.lattice()?.members.iter().rev() {
        let index = h.order() / n.order();
        if !COMPLEMENT_TYPES.iter().any(|t| t.order() == index) {
            continue;
        }
        if !has_cyclic_sylows(&n.group, cap)? {
            continue;
        }
        let quotient = if index == 1 {
            PermGroup::trivial(1)
        } else {
            hctx.quotient(&n.group)?.action.quotient
        };
        if let Some(t) = small_type(&quotient, cap)? {
            if COMPLEMENT_TYPES.contains(&t) {
                return Ok(Some(ComplementClass {
                    normal: n.group.clone(),
                    quotient_type: t,
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Config;

    fn ctx(n: usize, gens: &[&str]) -> GroupContext {
        let g = PermGroup::new(n, gens.iter().map(|s| Permutation::parse(s, n).unwrap()).collect())
            .unwrap();
        GroupContext::new(g, &Config::default()).unwrap()
    }

    /// `C3² ⋊ Q8` on the nine points of `GF(3)²`, `(a, b) ↦ 3a + b + 1`.
    fn c3sq_q8() -> GroupContext {
        let pt = |a: i64, b: i64| (3 * a.rem_euclid(3) + b.rem_euclid(3)) as u32;
        let linear = |m: [[i64; 2]; 2]| {
            let mut img = vec![0u32; 9];
            for a in 0..3 {
                for b in 0..3 {
                    img[pt(a, b) as usize] = pt(m[0][0] * a + m[0][1] * b, m[1][0] * a + m[1][1] * b);
                }
            }
            Permutation::from_images(img).unwrap()
        };
        let shift = |da: i64, db: i64| {
            let mut img = vec![0u32; 9];
            for a in 0..3 {
                for b in 0..3 {
                    img[pt(a, b) as usize] = pt(a + da, b + db);
                }
            }
            Permutation::from_images(img).unwrap()
        };
        let gens = vec![
            shift(1, 0),
            shift(0, 1),
            linear([[0, -1], [1, 0]]),
            linear([[1, 1], [1, -1]]),
        ];
        GroupContext::new(PermGroup::new(9, gens).unwrap(), &Config::default()).unwrap()
    }

    #[test]
    fn s3_and_a4_are_frobenius() {
        let s3 = ctx(3, &["(1 2)", "(1 2 3)"]);
        let d = frobenius_decomposition(&s3).unwrap().unwrap();
        assert_eq!((d.kernel.order(), d.complement_order), (3, 2));
        assert!(d.kernel_abelian);
        assert!(verify_decomposition(&s3, &d).unwrap());
        let a4 = ctx(4, &["(1 2 3)", "(2 3 4)"]);
        let d = frobenius_decomposition(&a4).unwrap().unwrap();
        assert_eq!((d.kernel.order(), d.complement_order), (4, 3));
        assert!(verify_decomposition(&a4, &d).unwrap());
    }

    #[test]
    fn non_frobenius_groups() {
        for (n, gens) in [
            (4, vec!["(1 2)", "(1 2 3 4)"]),
            (6, vec!["(1 2 3 4 5 6)"]),
            (5, vec!["(1 2 3)", "(3 4 5)"]),
            (4, vec!["(1 2 3 4)", "(1 3)"]),
        ] {
            let c = ctx(n, &gens);
            assert!(frobenius_decomposition(&c).unwrap().is_none(), "{gens:?}");
        }
    }

    #[test]
    fn s4_is_2_frobenius() {
        let s4 = ctx(4, &["(1 2)", "(1 2 3 4)"]);
        let w = is_2_frobenius(&s4).unwrap().unwrap();
        assert_eq!((w.f.order(), w.l.order()), (4, 12));
        let nw = is_nearly_2_frobenius(&s4).unwrap().unwrap();
        assert_eq!(
            (nw.f.order(), nw.f1.order(), nw.f2.order(), nw.l.order()),
            (4, 4, 1, 12)
        );
    }

    #[test]
    fn small_groups_are_not_2_frobenius() {
        for (n, gens) in [
            (3, vec!["(1 2)", "(1 2 3)"]),
            (6, vec!["(1 2 3 4 5 6)"]),
            (5, vec!["(1 2 3 4 5)", "(2 5)(3 4)"]),
        ] {
            let c = ctx(n, &gens);
            assert!(is_2_frobenius(&c).unwrap().is_none());
            assert!(is_nearly_2_frobenius(&c).unwrap().is_none());
        }
    }

    #[test]
    fn frobenius_72_with_quaternion_complement() {
        let g = c3sq_q8();
        assert_eq!(g.order(), 72);
        let d = frobenius_decomposition(&g).unwrap().unwrap();
        assert_eq!((d.kernel.order(), d.complement_order), (9, 8));
        assert!(verify_decomposition(&g, &d).unwrap());
        let c = complement_classification(&d.complement, &g).unwrap().unwrap();
        assert_eq!(c.normal.order(), 2);
        assert_eq!(c.quotient_type, SmallType::V4);
    }

    #[test]
    fn cyclic_complements_classify_trivially() {
        let a4 = ctx(4, &["(1 2 3)", "(2 3 4)"]);
        let d = frobenius_decomposition(&a4).unwrap().unwrap();
        let c = complement_classification(&d.complement, &a4).unwrap().unwrap();
        assert_eq!(c.quotient_type, SmallType::Trivial);
        assert_eq!(c.normal.order(), 3);
    }

    #[test]
    fn affine_group_of_order_20() {
        let g = ctx(5, &["(1 2 3 4 5)", "(2 3 5 4)"]);
        let d = frobenius_decomposition(&g).unwrap().unwrap();
        assert_eq!((d.kernel.order(), d.complement_order), (5, 4));
    }

    #[test]
    fn search_cap_is_a_resource_error() {
        let g = PermGroup::new(
            5,
            vec![
                Permutation::parse("(1 2 3 4 5)", 5).unwrap(),
                Permutation::parse("(2 3 5 4)", 5).unwrap(),
            ],
        )
        .unwrap();
        let cfg = Config {
            search_cap: 0,
            ..Config::default()
        };
        let c = GroupContext::new(g, &cfg).unwrap();
        assert!(frobenius_decomposition(&c).unwrap_err().is_resource());
    }
}
