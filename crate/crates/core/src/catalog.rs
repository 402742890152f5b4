//! Named groups: constructors for standard families, the default corpus and
//! a loader for `.grp` files.

use std::collections::BTreeSet;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numbers::{is_prime, pow_mod, primitive_root};
use crate::perm::Permutation;
use crate::permgrp::PermGroup;

#[derive(Debug, Clone, Serialize)]
pub struct NamedGroup {
    pub name: String,
    #[serde(skip)]
    pub group: PermGroup,
    pub order: u64,
    pub tags: BTreeSet<String>,
}

impl NamedGroup {
    pub fn new(name: impl Into<String>, group: PermGroup) -> Self {
        NamedGroup {
            name: name.into(),
            order: group.order(),
            group,
            tags: BTreeSet::new(),
        }
    }

    pub fn tagged(mut self, tags: &[&str]) -> Self {
        self.tags.extend(tags.iter().map(|t| t.to_string()));
        self
    }

    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.contains(tag)
    }
}

fn perm(images: Vec<u32>) -> Permutation {
    Permutation::from_images(images).expect("constructed images form a bijection")
}

fn cycle(degree: usize, points: impl IntoIterator<Item = usize>) -> Permutation {
    let pts: Vec<usize> = points.into_iter().collect();
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for (i, &p) in pts.iter().enumerate() {
        images[p] = pts[(i + 1) % pts.len()] as u32;
    }
    perm(images)
}

fn group(degree: usize, gens: Vec<Permutation>) -> PermGroup {
    PermGroup::new(degree, gens).expect("catalog generators share a degree")
}

fn out_of_range(what: &str) -> Error {
    Error::invalid(format!("parameter out of range: {what}"))
}

pub fn cyclic(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(out_of_range("cyclic(n) needs n ≥ 1"));
    }
    Ok(group(n, vec![cycle(n, 0..n)]))
}

/// `C_{n₁} × C_{n₂} × …` on disjoint orbits.
pub fn abelian(factors: &[usize]) -> Result<PermGroup> {
    if factors.is_empty() || factors.contains(&0) {
        return Err(out_of_range("abelian(type) needs positive factors"));
    }
    let degree: usize = factors.iter().sum();
    let mut gens = Vec::new();
    let mut offset = 0;
    for &n in factors {
        gens.push(cycle(degree, offset..offset + n));
        offset += n;
    }
    Ok(group(degree, gens))
}

/// Dihedral group of order `2n` on `n` points.
pub fn dihedral(n: usize) -> Result<PermGroup> {
    if n < 3 {
        return Err(out_of_range("dihedral(n) needs n ≥ 3"));
    }
    let reflection = perm((0..n).map(|i| ((n - i) % n) as u32).collect());
    Ok(group(n, vec![cycle(n, 0..n), reflection]))
}

/// Dicyclic group of order `4n` in its regular representation; `n = 2`
/// gives `Q8`.
pub fn dicyclic(n: usize) -> Result<PermGroup> {
    if n < 2 {
        return Err(out_of_range("dicyclic(n) needs n ≥ 2"));
    }
    let m = 2 * n;
    // a^k x^j ↦ point k + m·j
    let mul = |(k, j): (usize, usize), (l, i): (usize, usize)| -> (usize, usize) {
        match (j, i) {
            (0, _) => ((k + l) % m, i),
            (1, 0) => ((k + m - l) % m, 1),
            _ => ((k + m - l + n) % m, 0),
        }
    };
    let right = |g: (usize, usize)| {
        perm(
            (0..2 * m)
                .map(|p| {
                    let (k, j) = mul((p % m, p / m), g);
                    (k + m * j) as u32
                })
                .collect(),
        )
    };
    Ok(group(2 * m, vec![right((1, 0)), right((0, 1))]))
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    if !(1..=8).contains(&n) {
        return Err(out_of_range("symmetric(n) needs 1 ≤ n ≤ 8"));
    }
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    Ok(group(n, vec![cycle(n, [0, 1]), cycle(n, 0..n)]))
}

pub fn alternating(n: usize) -> Result<PermGroup> {
    if !(1..=8).contains(&n) {
        return Err(out_of_range("alternating(n) needs 1 ≤ n ≤ 8"));
    }
    if n < 3 {
        return Ok(PermGroup::trivial(n));
    }
    let long = if n % 2 == 1 { cycle(n, 0..n) } else { cycle(n, 1..n) };
    Ok(group(n, vec![cycle(n, 0..3), long]))
}

/// `C_p ⋊ C_d` acting on `GF(p)` by `x ↦ x + 1` and `x ↦ a·x`, with `a` the
/// `(p−1)/d`-th power of the least primitive root.
pub fn affine_frobenius(p: u64, d: u64) -> Result<PermGroup> {
    if !is_prime(p) || d == 0 || (p - 1) % d != 0 || p > 1 << 16 {
        return Err(out_of_range("affine_frobenius(p, d) needs prime p and d | p−1"));
    }
    let n = p as usize;
    let a = pow_mod(primitive_root(p), (p - 1) / d, p);
    let scale = perm((0..p).map(|x| (x * a % p) as u32).collect());
    Ok(group(n, vec![cycle(n, 0..n), scale]))
}

/// `GF(q)` for the prime powers used by [`psl2`], elements encoded as
/// base-`p` digit vectors.
struct SmallField {
    q: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
}

impl SmallField {
    fn new(q: usize) -> Result<Self> {
        // (p, k, low coefficients of a monic irreducible of degree k)
        let (p, k, poly): (usize, usize, &[usize]) = match q {
            2 | 3 | 5 | 7 | 11 | 13 => (q, 1, &[0]),
            4 => (2, 2, &[1, 1]),
            8 => (2, 3, &[1, 1, 0]),
            9 => (3, 2, &[2, 2]),
            _ => return Err(out_of_range("psl2(q) needs q ∈ {4,5,7,8,9,11}")),
        };
        let digits = |x: usize| -> Vec<usize> { (0..k).map(|i| x / p.pow(i as u32) % p).collect() };
        let number = |v: &[usize]| -> usize { v.iter().rev().fold(0, |acc, &d| acc * p + d) };
        let mut add = vec![vec![0; q]; q];
        let mut mul = vec![vec![0; q]; q];
        for x in 0..q {
            for y in 0..q {
                let (a, b) = (digits(x), digits(y));
                let s: Vec<usize> = a.iter().zip(&b).map(|(u, v)| (u + v) % p).collect();
                add[x][y] = number(&s);
                let mut prod = vec![0usize; 2 * k];
                for i in 0..k {
                    for j in 0..k {
                        prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
                    }
                }
                // x^k = −(poly)
                for deg in (k..2 * k - 1).rev() {
                    let c = prod[deg];
                    if c == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (i, &pc) in poly.iter().enumerate() {
                        prod[deg - k + i] = (prod[deg - k + i] + (p - pc) * c) % p;
                    }
                }
                mul[x][y] = number(&prod[..k]);
            }
        }
        Ok(SmallField { q, add, mul })
    }

    fn neg(&self, x: usize) -> usize {
        (0..self.q).find(|&y| self.add[x][y] == 0).unwrap()
    }

    fn inv(&self, x: usize) -> usize {
        (0..self.q).find(|&y| self.mul[x][y] == 1).unwrap()
    }

    fn primitive_element(&self) -> usize {
        (2..self.q)
            .chain(std::iter::once(1))
            .find(|&w| {
                let mut x = w;
                let mut order = 1;
                while x != 1 {
                    x = self.mul[x][w];
                    order += 1;
                }
                order == self.q - 1
            })
            .unwrap()
    }
}

/// `PSL(2, q)` acting on the projective line `GF(q) ∪ {∞}` (point `q` is ∞)
/// by `x ↦ x + 1`, `x ↦ ω²x` and `x ↦ −1/x`.
pub fn psl2(q: usize) -> Result<PermGroup> {
    if ![4, 5, 7, 8, 9, 11].contains(&q) {
        return Err(out_of_range("psl2(q) needs q ∈ {4,5,7,8,9,11}"));
    }
    let f = SmallField::new(q)?;
    let inf = q;
    let w = f.primitive_element();
    let w2 = f.mul[w][w];
    let translate = perm((0..q).map(|x| f.add[x][1] as u32).chain([inf as u32]).collect());
    let scale = perm((0..q).map(|x| f.mul[x][w2] as u32).chain([inf as u32]).collect());
    let invert = perm(
        (0..=q)
            .map(|x| match x {
                _ if x == inf => 0,
                0 => inf as u32,
                _ => f.neg(f.inv(x)) as u32,
            })
            .collect(),
    );
    Ok(group(q + 1, vec![translate, scale, invert]))
}

/// `SL(2, 3)` on the eight non-zero vectors of `GF(3)²`.
pub fn sl23() -> PermGroup {
    let vectors: Vec<(usize, usize)> = (0..9).map(|v| (v / 3, v % 3)).filter(|&v| v != (0, 0)).collect();
    let index = |v: (usize, usize)| vectors.iter().position(|&u| u == v).unwrap() as u32;
    let act = |m: [[usize; 2]; 2]| {
        perm(
            vectors
                .iter()
                .map(|&(a, b)| index(((m[0][0] * a + m[0][1] * b) % 3, (m[1][0] * a + m[1][1] * b) % 3)))
                .collect(),
        )
    };
    group(8, vec![act([[1, 1], [0, 1]]), act([[1, 0], [1, 1]])])
}

/// `A × B` on the disjoint union of the point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let (da, db) = (a.degree(), b.degree());
    let degree = da + db;
    let mut gens = Vec::new();
    for g in a.generators() {
        let images: Vec<u32> = g.images().iter().copied().chain((da..degree).map(|i| i as u32)).collect();
        gens.push(perm(images));
    }
    for g in b.generators() {
        let images: Vec<u32> = (0..da as u32).chain(g.images().iter().map(|&i| i + da as u32)).collect();
        gens.push(perm(images));
    }
    group(degree, gens)
}

pub fn mathieu11() -> PermGroup {
    let gens = ["(1 2 3 4 5 6 7 8 9 10 11)", "(3 7 11 8)(4 10 5 6)"]
        .iter()
        .map(|s| Permutation::parse(s, 11).expect("M11 generator"))
        .collect();
    group(11, gens)
}

fn parse_params(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::parse(None, format!("bad parameter `{t}`")))
        })
        .collect()
}

/// Builds a family member from `family:params`, e.g. `dihedral:5`,
/// `abelian:2,2,3`, `affine_frobenius:7,3`, `psl2:7`, `sl23`, `m11`.
pub fn make(spec: &str) -> Result<NamedGroup> {
    let (family, params) = match spec.split_once(':') {
        Some((f, p)) => (f.trim(), parse_params(p)?),
        None => (spec.trim(), Vec::new()),
    };
    let one = |what: &str| -> Result<usize> {
        match params.as_slice() {
            [n] => Ok(*n),
            _ => Err(Error::parse(None, format!("{what} takes one parameter"))),
        }
    };
    let named = match family {
        "cyclic" => {
            let n = one("cyclic")?;
            NamedGroup::new(format!("C{n}"), cyclic(n)?)
        }
        "abelian" => {
            let label: Vec<String> = params.iter().map(|n| format!("C{n}")).collect();
            NamedGroup::new(label.join("x"), abelian(&params)?)
        }
        "dihedral" => {
            let n = one("dihedral")?;
            NamedGroup::new(format!("D{}", 2 * n), dihedral(n)?)
        }
        "dicyclic" => {
            let n = one("dicyclic")?;
            let name = if n == 2 { "Q8".to_string() } else { format!("Dic{}", 4 * n) };
            NamedGroup::new(name, dicyclic(n)?)
        }
        "symmetric" => {
            let n = one("symmetric")?;
            NamedGroup::new(format!("S{n}"), symmetric(n)?)
        }
        "alternating" => {
            let n = one("alternating")?;
            NamedGroup::new(format!("A{n}"), alternating(n)?)
        }
        "affine_frobenius" | "affine" => match params.as_slice() {
            [p, d] => NamedGroup::new(
                format!("AF({p},{d})"),
                affine_frobenius(*p as u64, *d as u64)?,
            ),
            _ => return Err(Error::parse(None, "affine_frobenius takes p,d")),
        },
        "psl2" => {
            let q = one("psl2")?;
            NamedGroup::new(format!("PSL(2,{q})"), psl2(q)?)
        }
        "sl23" => NamedGroup::new("SL(2,3)", sl23()),
        "m11" => NamedGroup::new("M11", mathieu11()),
        "c2xdihedral" => {
            let n = one("c2xdihedral")?;
            NamedGroup::new(format!("C2xD{}", 2 * n), direct_product(&cyclic(2)?, &dihedral(n)?))
        }
        _ => return Err(Error::parse(None, format!("unknown family `{family}`"))),
    };
    Ok(with_standard_tags(named))
}

fn with_standard_tags(mut g: NamedGroup) -> NamedGroup {
    let name = g.name.as_str();
    let mut tags: Vec<&str> = Vec::new();
    if matches!(name, "S4" | "S5" | "A5" | "A6" | "PSL(2,7)") {
        tags.push("showcase");
    }
    if name.starts_with("PSL(2,") || matches!(name, "A5" | "A6" | "A8") {
        tags.extend(["lie-type", "simple"]);
    }
    if name.starts_with('C') && !name.contains('x') && g.order > 1 && is_prime(g.order) {
        tags.push("simple");
    }
    if name == "M11" {
        tags.extend(["simple", "sporadic"]);
    }
    if name.starts_with("AF(") {
        tags.push("frobenius-family");
    }
    if name.starts_with('D') && !name.starts_with("Dic") && (g.order / 2) % 2 == 1 {
        tags.push("frobenius-family");
    }
    g.tags.extend(tags.into_iter().map(String::from));
    g
}

/// Every group the verification harness runs on by default.
pub fn default_corpus() -> Vec<NamedGroup> {
    let mut specs: Vec<String> = Vec::new();
    specs.extend((1..=64).map(|n| format!("cyclic:{n}")));
    specs.extend((3..=32).map(|n| format!("dihedral:{n}")));
    specs.extend((2..=16).map(|n| format!("dicyclic:{n}")));
    specs.extend((3..=6).map(|n| format!("symmetric:{n}")));
    specs.extend((4..=6).map(|n| format!("alternating:{n}")));
    specs.push("sl23".into());
    for p in [5u64, 7, 11, 13] {
        for d in 2..p {
            if (p - 1) % d == 0 {
                specs.push(format!("affine_frobenius:{p},{d}"));
            }
        }
    }
    specs.extend([4, 5, 7, 8, 9, 11].iter().map(|q| format!("psl2:{q}")));
    specs.extend((3..=16).map(|n| format!("c2xdihedral:{n}")));
    specs
        .iter()
        .map(|s| make(s).expect("corpus specs are in range"))
        .collect()
}

/// Larger groups kept out of the default run.
pub fn stretch_corpus() -> Vec<NamedGroup> {
    vec![
        with_standard_tags(NamedGroup::new("M11", mathieu11())).tagged(&["stretch"]),
        with_standard_tags(NamedGroup::new("A8", alternating(8).expect("A8"))).tagged(&["stretch"]),
    ]
}

/// Looks a name up in the default and stretch corpora, then tries
/// `family:params`.
pub fn lookup(name: &str) -> Result<NamedGroup> {
    if let Some(g) = default_corpus()
        .into_iter()
        .chain(stretch_corpus())
        .find(|g| g.name == name)
    {
        return Ok(g);
    }
    make(name).map_err(|e| match e {
        Error::Parse { .. } => Error::invalid(format!("unknown group `{name}`")),
        other => other,
    })
}

/// Parses `.grp` text: a `degree N` line, then one generator per line.
pub fn parse_group_text(name: &str, text: &str) -> Result<NamedGroup> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match degree {
            None => {
                let n = line
                    .strip_prefix("degree")
                    .filter(|rest| rest.starts_with(char::is_whitespace))
                    .and_then(|rest| rest.trim().parse::<usize>().ok())
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| {
                        Error::parse(Some(line_no), format!("expected `degree N`, found `{line}`"))
                    })?;
                degree = Some(n);
            }
            Some(n) => {
                let g = Permutation::parse(line, n).map_err(|e| match e {
                    Error::Parse { message, .. } => Error::parse(Some(line_no), message),
                    other => other,
                })?;
                gens.push(g);
            }
        }
    }
    let degree = degree.ok_or_else(|| Error::parse(None, "missing `degree N` line"))?;
    Ok(NamedGroup::new(name, PermGroup::new(degree, gens)?))
}

pub fn load_group_file(path: &Path) -> Result<NamedGroup> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "group".to_string());
    parse_group_text(&name, &text)
}

/// All `*.grp` files in a directory, sorted by file name.
pub fn load_group_dir(dir: &Path) -> Result<Vec<NamedGroup>> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", dir.display())))?;
    let mut paths: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "grp"))
        .collect();
    paths.sort();
    paths.iter().map(|p| load_group_file(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_orders() {
        for n in 1..=12 {
            assert_eq!(cyclic(n).unwrap().order(), n as u64);
        }
        for n in 3..=12 {
            assert_eq!(dihedral(n).unwrap().order(), 2 * n as u64);
        }
        for n in 2..=8 {
            assert_eq!(dicyclic(n).unwrap().order(), 4 * n as u64);
        }
        let fact = [1u64, 1, 2, 6, 24, 120, 720, 5040, 40320];
        for n in 1..=8 {
            assert_eq!(symmetric(n).unwrap().order(), fact[n]);
            assert_eq!(alternating(n).unwrap().order(), fact[n].div_ceil(2).max(1));
        }
        assert_eq!(abelian(&[2, 2, 3]).unwrap().order(), 12);
        assert_eq!(sl23().order(), 24);
        assert_eq!(mathieu11().order(), 7920);
    }

    #[test]
    fn psl2_orders() {
        for q in [4u64, 5, 7, 8, 9, 11] {
            let g = psl2(q as usize).unwrap();
            let expected = q * (q * q - 1) / if q % 2 == 1 { 2 } else { 1 };
            assert_eq!(g.order(), expected, "q = {q}");
            assert_eq!(g.degree() as u64, q + 1);
        }
    }

    #[test]
    fn affine_orders() {
        assert_eq!(affine_frobenius(5, 4).unwrap().order(), 20);
        assert_eq!(affine_frobenius(13, 6).unwrap().order(), 78);
        assert!(affine_frobenius(7, 4).is_err());
        assert!(affine_frobenius(9, 2).is_err());
    }

    #[test]
    fn quaternion_is_nonabelian_with_one_involution() {
        let q8 = dicyclic(2).unwrap();
        let elems = q8.elements(100).unwrap();
        assert_eq!(elems.iter().filter(|g| g.order() == 2).count(), 1);
        assert!(!q8.is_abelian());
    }

    #[test]
    fn corpus_shape() {
        let corpus = default_corpus();
        assert!(corpus.len() >= 100);
        let names: BTreeSet<&str> = corpus.iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names.len(), corpus.len());
        assert!(corpus.iter().all(|g| g.order <= 20160));
        let s4 = corpus.iter().find(|g| g.name == "S4").unwrap();
        assert!(s4.has_tag("showcase"));
        assert!(corpus.iter().any(|g| g.name == "Q8"));
        assert!(corpus.iter().any(|g| g.name == "PSL(2,7)" && g.order == 168));
    }

    #[test]
    fn make_errors() {
        assert!(make("dihedral:2").is_err());
        assert!(make("psl2:6").is_err());
        assert!(make("nonsense").is_err());
        assert!(make("cyclic:x").is_err());
        assert_eq!(make("dihedral:5").unwrap().order, 10);
        assert_eq!(lookup("S4").unwrap().order, 24);
        assert_eq!(lookup("M11").unwrap().order, 7920);
    }

    #[test]
    fn grp_parsing() {
        let g = parse_group_text("s4", "# S4\ndegree 4\n(1 2)\n\n(1 2 3 4) # 4-cycle\n").unwrap();
        assert_eq!(g.order, 24);
        let t = parse_group_text("t", "degree 3\n").unwrap();
        assert_eq!(t.order, 1);
        let e = parse_group_text("bad", "degree 3\n(1 2)\n(1 5)\n").unwrap_err();
        assert_eq!(e.kind(), "parse");
        assert!(e.to_string().starts_with("line 3:"), "{e}");
        let e = parse_group_text("bad", "(1 2)\n").unwrap_err();
        assert!(e.to_string().starts_with("line 1:"));
        assert!(parse_group_text("bad", "").is_err());
    }
}
