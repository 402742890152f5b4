//! Brute-force references, written without the library's class or table code.

#![allow(dead_code)]

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use vanset::{CharacterTable, Cyclotomic, PermGroup, Permutation};

/// Conjugacy classes by orbit closure under conjugation by generators.
pub struct BruteClasses {
    pub elements: Vec<Permutation>,
    pub index: HashMap<Permutation, usize>,
    pub class_of: Vec<usize>,
    pub sizes: Vec<u64>,
}

impl BruteClasses {
    pub fn new(g: &PermGroup) -> Self {
        let elements = g.elements(1 << 20).expect("small group");
        let index: HashMap<Permutation, usize> =
            elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut class_of = vec![usize::MAX; elements.len()];
        let mut sizes = Vec::new();
        for start in 0..elements.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let c = sizes.len();
            class_of[start] = c;
            let mut stack = vec![start];
            let mut size = 0u64;
            while let Some(x) = stack.pop() {
                size += 1;
                for s in g.generators() {
                    let y = index[&elements[x].conjugate_by(s)];
                    if class_of[y] == usize::MAX {
                        class_of[y] = c;
                        stack.push(y);
                    }
                }
            }
            sizes.push(size);
        }
        BruteClasses {
            elements,
            index,
            class_of,
            sizes,
        }
    }

    pub fn class_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn class_of_perm(&self, p: &Permutation) -> usize {
        self.class_of[self.index[p]]
    }

    /// `a[i][j][k]`: number of `(x, y)` in `K_i × K_j` with `xy = z` for a
    /// fixed `z ∈ K_k`, with classes indexed through `relabel`.
    pub fn class_constants(&self, relabel: &[usize]) -> Vec<Vec<Vec<u64>>> {
        let k = self.class_count();
        let mut reps = vec![usize::MAX; k];
        for (e, &c) in self.class_of.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = e;
            }
        }
        let mut a = vec![vec![vec![0u64; k]; k]; k];
        for c in 0..k {
            let z = &self.elements[reps[c]];
            for x in &self.elements {
                let y = x.inverse().mul(z);
                let i = relabel[self.class_of_perm(x)];
                let j = relabel[self.class_of_perm(&y)];
                a[i][j][relabel[c]] += 1;
            }
        }
        a
    }
}

/// Maps brute-force class ids to the table's class order, checking that the
/// two partitions agree.
pub fn relabel_to_table(b: &BruteClasses, t: &CharacterTable) -> Vec<usize> {
    assert_eq!(b.class_count(), t.class_count(), "class counts differ");
    let mut map = vec![usize::MAX; b.class_count()];
    for (i, c) in t.classes.iter().enumerate() {
        let bc = b.class_of_perm(&c.representative);
        assert_eq!(map[bc], usize::MAX, "two table classes share a brute class");
        assert_eq!(b.sizes[bc], c.size, "class size mismatch");
        map[bc] = i;
    }
    map
}

/// Checks exactly that the rows of `t` are the irreducible characters: each
/// row's central character is multiplicative on the brute-force class
/// algebra, rows have norm one and positive integer degree, and rows are
/// distinct. Together these pin down the table up to row order.
pub fn exact_class_algebra_check(g: &PermGroup, t: &CharacterTable) -> Result<(), String> {
    let b = BruteClasses::new(g);
    let relabel = relabel_to_table(&b, t);
    let a = b.class_constants(&relabel);
    let k = t.class_count();
    if t.len() != k {
        return Err(format!("{} rows for {k} classes", t.len()));
    }
    let sizes: Vec<i64> = t.classes.iter().map(|c| c.size as i64).collect();
    let e = t.values[0][0].conductor();
    for (r, row) in t.values.iter().enumerate() {
        let d = row[0]
            .as_integer()
            .filter(|&d| d > 0)
            .ok_or_else(|| format!("row {r}: degree {} is not a positive integer", row[0]))?;
        let mut norm = Cyclotomic::zero(e);
        for c in 0..k {
            norm = &norm + &(&row[c] * &row[c].conj()).scale(sizes[c]);
        }
        if norm != Cyclotomic::from_int(e, t.group_order as i64) {
            return Err(format!("row {r}: norm {norm}"));
        }
        for i in 0..k {
            for j in i..k {
                let lhs = (&row[i] * &row[j]).scale(sizes[i] * sizes[j]);
                let mut rhs = Cyclotomic::zero(e);
                for c in 0..k {
                    if a[i][j][c] != 0 {
                        rhs = &rhs + &row[c].scale(a[i][j][c] as i64 * sizes[c]);
                    }
                }
                if lhs != rhs.scale(d) {
                    return Err(format!("row {r}: central character fails at ({i}, {j})"));
                }
            }
        }
    }
    for r in 0..k {
        for s in r + 1..k {
            if t.values[r] == t.values[s] {
                return Err(format!("rows {r} and {s} coincide"));
            }
        }
    }
    Ok(())
}

/// Character table in floating point from a Hermitian combination of the
/// symmetrised class matrices. Rows in eigenvalue order; columns follow the
/// table's classes.
pub fn numeric_table(g: &PermGroup, t: &CharacterTable) -> Vec<Vec<Complex64>> {
    let b = BruteClasses::new(g);
    let relabel = relabel_to_table(&b, t);
    let a = b.class_constants(&relabel);
    let k = t.class_count();
    let sizes: Vec<f64> = t.classes.iter().map(|c| c.size as f64).collect();
    let order = t.group_order as f64;
    // B_i = D^{1/2} A_i D^{-1/2}, with (A_i)[c][j] = a[i][j][c].
    let mats: Vec<DMatrix<Complex64>> = (0..k)
        .map(|i| {
            DMatrix::from_fn(k, k, |c, j| {
                Complex64::new(a[i][j][c] as f64 * (sizes[c] / sizes[j]).sqrt(), 0.0)
            })
        })
        .collect();
    for attempt in 0..8 {
        let mut h = DMatrix::<Complex64>::zeros(k, k);
        for (i, m) in mats.iter().enumerate() {
            let sym = m + m.transpose();
            let anti = (m - m.transpose()) * Complex64::new(0.0, 1.0);
            let x = ((i + 2 + attempt) as f64).sqrt();
            let y = ((i + 3 + 2 * attempt) as f64).ln();
            h += sym * Complex64::new(x, 0.0) + anti * Complex64::new(y, 0.0);
        }
        let eig = h.symmetric_eigen();
        let mut ev: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        ev.sort_by(|p, q| p.partial_cmp(q).unwrap());
        if ev.windows(2).any(|w| w[1] - w[0] < 1e-6) {
            continue;
        }
        let mut rows = Vec::with_capacity(k);
        for col in 0..k {
            let v = eig.eigenvectors.column(col).into_owned();
            let omega: Vec<Complex64> = mats
                .iter()
                .map(|m| (v.adjoint() * (m * &v))[(0, 0)])
                .collect();
            let s: f64 = (0..k).map(|i| omega[i].norm_sqr() / sizes[i]).sum();
            let degree = (order / s).sqrt();
            rows.push((0..k).map(|i| omega[i] * degree / sizes[i]).collect());
        }
        return rows;
    }
    panic!("no simple spectrum found");
}

/// Matches numeric rows to exact rows; every exact row must be hit once.
pub fn numeric_agrees(t: &CharacterTable, numeric: &[Vec<Complex64>], tol: f64) -> bool {
    let mut used = vec![false; t.len()];
    for row in numeric {
        let hit = (0..t.len()).find(|&r| {
            !used[r]
                && t.values[r].iter().zip(row).all(|(x, y)| {
                    let (re, im) = x.to_complex();
                    (Complex64::new(re, im) - y).norm() < tol
                })
        });
        match hit {
            Some(r) => used[r] = true,
            None => return false,
        }
    }
    used.iter().all(|&u| u)
}

/// Classes where some row of the table is zero, from the raw values.
pub fn zero_columns(t: &CharacterTable) -> Vec<usize> {
    (0..t.class_count())
        .filter(|&c| t.values.iter().any(|row| row[c].is_zero()))
        .collect()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Largest gcd of element orders over pairs of distinct listed classes; 0
/// when there is no pair.
pub fn max_pairwise_gcd(orders: &[u64]) -> u64 {
    let mut best = 0;
    for i in 0..orders.len() {
        for j in i + 1..orders.len() {
            best = best.max(gcd(orders[i], orders[j]));
        }
    }
    best
}
