//! Permutations on the points `0..n`, written and parsed in 1-indexed
//! disjoint-cycle notation.
//!
//! Products compose left to right: `p.mul(&q)` applies `p` first and then
//! `q`, so `i^(pq) = (i^p)^q`. Conjugation is `x^g = g⁻¹ x g`.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numbers::lcm;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image array, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::invalid("permutation degree must be at least 1"));
        }
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let i = i as usize;
            if i >= images.len() || seen[i] {
                return Err(Error::invalid("image array is not a bijection"));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// Builds a permutation of the given degree from 0-indexed cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let a_idx = a as usize;
                if a_idx >= degree {
                    return Err(Error::invalid(format!("point {} out of range", a + 1)));
                }
                if seen[a_idx] {
                    return Err(Error::invalid(format!("point {} repeated", a + 1)));
                }
                seen[a_idx] = true;
                images[a_idx] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Parses 1-indexed disjoint-cycle notation such as `(1 2 3)(4 5)`.
    ///
    /// Points may be separated by spaces or commas. The empty string and
    /// `()` both denote the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::parse(None, "degree must be at least 1"));
        }
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut current: Option<Vec<u32>> = None;
        let mut number = String::new();
        let flush = |number: &mut String, current: &mut Option<Vec<u32>>| -> Result<()> {
            if number.is_empty() {
                return Ok(());
            }
            let point: usize = number
                .parse()
                .map_err(|_| Error::parse(None, format!("bad point `{number}`")))?;
            number.clear();
            match current {
                Some(c) => {
                    if point == 0 || point > degree {
                        return Err(Error::parse(
                            None,
                            format!("point {point} out of range 1..={degree}"),
                        ));
                    }
                    c.push(point as u32 - 1);
                    Ok(())
                }
                None => Err(Error::parse(None, "point outside parentheses")),
            }
        };
        for ch in text.chars() {
            match ch {
                '(' => {
                    if current.is_some() {
                        return Err(Error::parse(None, "nested '('"));
                    }
                    current = Some(Vec::new());
                }
                ')' => {
                    flush(&mut number, &mut current)?;
                    match current.take() {
                        Some(c) => cycles.push(c),
                        None => return Err(Error::parse(None, "unmatched ')'")),
                    }
                }
                '0'..='9' => number.push(ch),
                ',' | ' ' | '\t' => flush(&mut number, &mut current)?,
                other => return Err(Error::parse(None, format!("unexpected character `{other}`"))),
            }
        }
        if current.is_some() {
            return Err(Error::parse(None, "unclosed '('"));
        }
        if !number.is_empty() {
            return Err(Error::parse(None, "point outside parentheses"));
        }
        let refs: Vec<&[u32]> = cycles.iter().map(|c| c.as_slice()).collect();
        Self::from_cycles(degree, &refs).map_err(|e| match e {
            Error::InvalidInput(m) => Error::parse(None, m),
            other => other,
        })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Product `self · other`: apply `self`, then `other`.
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        // (x^g) maps i^g to (i^x)^g
        let mut out = vec![0u32; self.degree()];
        for (i, &xi) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[xi as usize];
        }
        Permutation {
            images: out.into_boxed_slice(),
        }
    }

    pub fn pow(&self, mut exp: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// `self⁻¹ · other⁻¹ · self · other`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse()
            .mul(&other.inverse())
            .mul(self)
            .mul(other)
    }

    /// Nontrivial cycles, 0-indexed, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p as u32);
                p = self.images[p] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// First point moved by this permutation.
    pub fn first_moved_point(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &j)| *i as u32 != j)
            .map(|(i, _)| i)
    }
}

/// `ord(x)`: the order of a permutation.
pub fn element_order(p: &Permutation) -> u64 {
    p.order()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_basic_cycles() {
        let p = Permutation::parse("(1 2 3)(4 5)", 5).unwrap();
        assert_eq!(p.images(), &[1, 2, 0, 4, 3]);
        assert_eq!(p.order(), 6);
    }

    #[test]
    fn parse_empty_is_identity() {
        let p = Permutation::parse("", 4).unwrap();
        assert!(p.is_identity());
        assert_eq!(p.degree(), 4);
        assert!(Permutation::parse("()", 4).unwrap().is_identity());
    }

    #[test]
    fn five_cycle_in_degree_eight() {
        let p = Permutation::parse("(1 2 3 4 5)", 8).unwrap();
        assert_eq!(p.order(), 5);
        assert_eq!(&p.images()[5..], &[5, 6, 7]);
        let q = Permutation::parse("(1 2 3 4 5)(6 7 8)", 8).unwrap();
        assert_eq!(element_order(&q), 15);
    }

    #[test]
    fn parse_errors() {
        assert!(Permutation::parse("(1 9)", 8).is_err());
        assert!(Permutation::parse("(1 2)(2 3)", 4).is_err());
        assert!(Permutation::parse("(1 2", 4).is_err());
        assert!(Permutation::parse("1 2)", 4).is_err());
        assert!(Permutation::parse("((1 2))", 4).is_err());
        assert!(Permutation::parse("(0 1)", 4).is_err());
        assert!(Permutation::parse("(1 x)", 4).is_err());
        assert!(matches!(
            Permutation::parse("(1 1)", 4),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn comma_separated_points() {
        let p = Permutation::parse("(1,2,3)", 3).unwrap();
        assert_eq!(p, Permutation::parse("(1 2 3)", 3).unwrap());
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = Permutation::parse("(1 2)", 3).unwrap();
        let b = Permutation::parse("(2 3)", 3).unwrap();
        // 1 -> 2 -> 3
        assert_eq!(a.mul(&b).image(0), 2);
        assert_eq!(a.mul(&b), Permutation::parse("(1 3 2)", 3).unwrap());
    }

    #[test]
    fn display_round_trips() {
        let p = Permutation::parse("(2 5)(1 3 4)", 6).unwrap();
        assert_eq!(p.to_string(), "(1 3 4)(2 5)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn display_parse_inverse(p in perm_strategy(9)) {
            prop_assert_eq!(Permutation::parse(&p.to_string(), 9).unwrap(), p);
        }

        #[test]
        fn group_axioms(a in perm_strategy(7), b in perm_strategy(7), c in perm_strategy(7)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert!(a.mul(&a.inverse()).is_identity());
            prop_assert_eq!(a.conjugate_by(&b), b.inverse().mul(&a).mul(&b));
            prop_assert!(a.pow(a.order()).is_identity());
            prop_assert_eq!(a.commutator(&b), a.inverse().mul(&b.inverse()).mul(&a).mul(&b));
        }
    }
}
