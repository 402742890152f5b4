//! Exact character tables by the Dixon–Schneider method.
//!
//! Central characters are common eigenvectors of the class matrices over a
//! prime field `F_p` with `p ≡ 1 (mod e)`; degrees and values are recovered
//! mod `p` and lifted to `Z[ζ_e]` through eigenvalue multiplicities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classes::{ClassData, ConjugacyClass};
use crate::config::Config;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::numbers::{inv_mod, is_prime, isqrt, mul_mod, pow_mod, primitive_root};

#[derive(Debug, Clone, Serialize)]
pub struct CharacterTable {
    pub group_order: u64,
    pub classes: Vec<ConjugacyClass>,
    /// `χ(1)` per row.
    pub degrees: Vec<u64>,
    /// Rows are irreducible characters, columns are classes.
    pub values: Vec<Vec<Cyclotomic>>,
    pub exponent: u64,
    pub dixon_prime: u64,
    /// Image of `ζ_e` in `F_p` used for lifting.
    #[serde(skip)]
    pub root_of_unity: u64,
    /// `χ(g_i) mod p` as produced before lifting.
    #[serde(skip)]
    pub residues: Vec<Vec<u64>>,
}

/// Lcm of the class element orders.
pub fn exponent(classes: &ClassData) -> u64 {
    classes.exponent()
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > 2·√|G|`.
pub fn dixon_prime(exponent: u64, group_order: u64, limit: u64) -> Result<u64> {
    let bound = 4u128 * group_order as u128;
    let mut p = exponent + 1;
    while p <= limit {
        if (p as u128) * (p as u128) > bound && is_prime(p) {
            return Ok(p);
        }
        p += exponent;
    }
    Err(Error::resource("dixon prime search", limit + 1, limit))
}

/// Class structure constants: `a[i][j][k] = #{(x, y) ∈ C_i × C_j : xy = z}` for
/// the representative `z` of `C_k`.
pub fn class_constants(cd: &ClassData) -> Vec<Vec<Vec<u64>>> {
    let r = cd.len();
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for k in 0..r {
        let col = class_constants_at(cd, &cd.classes[k].representative);
        for i in 0..r {
            for j in 0..r {
                a[i][j][k] = col[i][j];
            }
        }
    }
    a
}

/// `(i, j) ↦ #{x ∈ C_i : x⁻¹z ∈ C_j}` for an arbitrary element `z`.
pub fn class_constants_at(cd: &ClassData, z: &crate::perm::Permutation) -> Vec<Vec<u64>> {
    let r = cd.len();
    let mut out = vec![vec![0u64; r]; r];
    for (xi, x) in cd.elements.iter().enumerate() {
        let y = x.inverse().mul(z);
        let yi = cd
            .elements
            .index_of(&y)
            .expect("product of group elements lies in the group");
        out[cd.class_of_index(xi)][cd.class_of_index(yi)] += 1;
    }
    out
}

/// Builds the character table of the group whose classes are `cd`.
pub fn character_table(cd: &ClassData, config: &Config) -> Result<CharacterTable> {
    let r = cd.len();
    let order = cd.group_order;
    let e = cd.exponent();
    let p = dixon_prime(e, order, config.prime_search_limit)?;
    let constants = class_constants(cd);
    let matrices: Vec<Vec<Vec<u64>>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| (0..r).map(|k| constants[i][j][k] % p).collect())
                .collect()
        })
        .collect();

    let eigenvectors = common_eigenvectors(&matrices, p, config)?;
    if eigenvectors.len() != r {
        return Err(Error::internal(format!(
            "found {} central characters for {r} classes",
            eigenvectors.len()
        )));
    }

    let sizes: Vec<u64> = cd.classes.iter().map(|c| c.size).collect();
    let inv_sizes: Vec<u64> = sizes.iter().map(|&s| inv_mod(s % p, p)).collect();
    let lambda = pow_mod(primitive_root(p), (p - 1) / e, p);
    let max_degree = isqrt(order);

    let mut rows: Vec<(u64, Vec<Cyclotomic>, Vec<u64>)> = Vec::with_capacity(r);
    for v in eigenvectors {
        if v[0] == 0 {
            return Err(Error::internal("central character vanishes at the identity"));
        }
        let norm = inv_mod(v[0], p);
        let omega: Vec<u64> = v.iter().map(|&x| mul_mod(x, norm, p)).collect();
        let mut s = 0u64;
        for i in 0..r {
            let t = mul_mod(mul_mod(omega[i], omega[cd.inverse_class(i)], p), inv_sizes[i], p);
            s = (s + t) % p;
        }
        if s == 0 {
            return Err(Error::internal("degree congruence is singular"));
        }
        let target = mul_mod(order % p, inv_mod(s, p), p);
        let degree = (1..=max_degree)
            .find(|&d| mul_mod(d, d, p) == target)
            .ok_or_else(|| Error::internal("degree congruence has no root in (0, √|G|]"))?;
        let residues: Vec<u64> = (0..r)
            .map(|i| mul_mod(mul_mod(degree, omega[i], p), inv_sizes[i], p))
            .collect();
        let values = (0..r)
            .map(|c| lift_value(cd, &residues, c, lambda, p))
            .collect::<Result<Vec<_>>>()?;
        rows.push((degree, values, residues));
    }

    rows.sort_by(|a, b| {
        let trivial_a = a.1.iter().all(|v| v.as_integer() == Some(1));
        let trivial_b = b.1.iter().all(|v| v.as_integer() == Some(1));
        trivial_b
            .cmp(&trivial_a)
            .then(a.0.cmp(&b.0))
            .then_with(|| a.1.cmp(&b.1))
    });

    let table = CharacterTable {
        group_order: order,
        classes: cd.classes.clone(),
        degrees: rows.iter().map(|r| r.0).collect(),
        values: rows.iter().map(|r| r.1.clone()).collect(),
        residues: rows.into_iter().map(|r| r.2).collect(),
        exponent: e,
        dixon_prime: p,
        root_of_unity: lambda,
    };
    let sum_sq: u64 = table.degrees.iter().map(|d| d * d).sum();
    if sum_sq != order {
        return Err(Error::internal(format!(
            "sum of squared degrees {sum_sq} differs from |G| = {order}"
        )));
    }
    Ok(table)
}

/// Lifts `χ(g_c)` from residues on the powers of `g_c`: eigenvalue `ζ^k` of
/// `ρ(g)` has multiplicity `o⁻¹ Σ_s χ(g^s) μ^{-ks}` with `μ` of order `o = ord(g)`.
fn lift_value(cd: &ClassData, residues: &[u64], c: usize, lambda: u64, p: u64) -> Result<Cyclotomic> {
    let e = cd.exponent();
    let o = cd.classes[c].element_order;
    let step = e / o;
    let mu = pow_mod(lambda, step, p);
    let mu_inv = inv_mod(mu, p);
    let o_inv = inv_mod(o % p, p);
    let powers: Vec<u64> = (0..o).map(|s| residues[cd.power_class(c, s)]).collect();
    let mut mult = vec![0i64; e as usize];
    for k in 0..o {
        let w = pow_mod(mu_inv, k, p);
        let mut acc = 0u64;
        let mut ws = 1u64;
        for &chi in &powers {
            acc = (acc + mul_mod(chi, ws, p)) % p;
            ws = mul_mod(ws, w, p);
        }
        let m = mul_mod(acc, o_inv, p);
        if 2 * m >= p {
            return Err(Error::internal(format!(
                "eigenvalue multiplicity residue {m} does not lift (p = {p})"
            )));
        }
        mult[(k * step) as usize] = m as i64;
    }
    Ok(Cyclotomic::from_exponents(e, &mult))
}

fn common_eigenvectors(matrices: &[Vec<Vec<u64>>], p: u64, config: &Config) -> Result<Vec<Vec<u64>>> {
    let r = matrices.len();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![identity(r)];
    for m in matrices.iter().skip(1) {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        spaces = split_all(spaces, m, p)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut attempts = 0;
    while spaces.iter().any(|s| s.len() > 1) {
        if attempts >= config.split_iterations {
            return Err(Error::resource(
                "eigenspace splitting iterations",
                attempts as u64 + 1,
                config.split_iterations as u64,
            ));
        }
        attempts += 1;
        let coeffs: Vec<u64> = (0..r).map(|_| rng.gen_range(0..p)).collect();
        let mut combo = vec![vec![0u64; r]; r];
        for (m, &c) in matrices.iter().zip(&coeffs) {
            for j in 0..r {
                for k in 0..r {
                    combo[j][k] = (combo[j][k] + mul_mod(c, m[j][k], p)) % p;
                }
            }
        }
        spaces = split_all(spaces, &combo, p)?;
    }
    Ok(spaces.into_iter().map(|mut s| s.pop().expect("1-dimensional")).collect())
}

fn identity(r: usize) -> Vec<Vec<u64>> {
    (0..r)
        .map(|i| (0..r).map(|j| u64::from(i == j)).collect())
        .collect()
}

fn split_all(spaces: Vec<Vec<Vec<u64>>>, m: &[Vec<u64>], p: u64) -> Result<Vec<Vec<Vec<u64>>>> {
    let mut out = Vec::with_capacity(spaces.len());
    for s in spaces {
        if s.len() == 1 {
            out.push(s);
        } else {
            out.extend(split_space(&s, m, p)?);
        }
    }
    Ok(out)
}

/// Splits an `M`-invariant subspace (rows in reduced echelon form) into the
/// eigenspaces of `M` restricted to it.
fn split_space(basis: &[Vec<u64>], m: &[Vec<u64>], p: u64) -> Result<Vec<Vec<Vec<u64>>>> {
    let d = basis.len();
    let r = m.len();
    let pivots: Vec<usize> = basis
        .iter()
        .map(|b| b.iter().position(|&x| x != 0).expect("basis vectors are nonzero"))
        .collect();
    // restriction: M b_l = Σ_k A[k][l] b_k, read off at pivot columns
    let mut a = vec![vec![0u64; d]; d];
    for (l, b) in basis.iter().enumerate() {
        let mb: Vec<u64> = (0..r)
            .map(|j| {
                m[j].iter()
                    .zip(b)
                    .fold(0u64, |acc, (&x, &y)| (acc + mul_mod(x, y, p)) % p)
            })
            .collect();
        for (k, &pc) in pivots.iter().enumerate() {
            a[k][l] = mb[pc];
        }
    }
    let poly = char_poly(&a, p);
    let mut roots = Vec::new();
    for t in 0..p {
        if eval_poly(&poly, t, p) == 0 {
            roots.push(t);
            if roots.len() == d {
                break;
            }
        }
    }
    if roots.len() == 1 {
        return Ok(vec![basis.to_vec()]);
    }
    let mut pieces = Vec::with_capacity(roots.len());
    let mut total = 0;
    for lam in roots {
        let mut shifted = a.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = (row[i] + p - lam) % p;
        }
        let null = nullspace(&shifted, p);
        total += null.len();
        let vectors: Vec<Vec<u64>> = null
            .iter()
            .map(|c| {
                let mut v = vec![0u64; r];
                for (cl, b) in c.iter().zip(basis) {
                    if *cl != 0 {
                        for (vj, &bj) in v.iter_mut().zip(b) {
                            *vj = (*vj + mul_mod(*cl, bj, p)) % p;
                        }
                    }
                }
                v
            })
            .collect();
        pieces.push(row_reduce(vectors, p));
    }
    if total != d {
        return Err(Error::internal(
            "class matrix restriction is not diagonalizable over F_p",
        ));
    }
    Ok(pieces)
}

fn eval_poly(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter()
        .rev()
        .fold(0u64, |acc, &c| (mul_mod(acc, x, p) + c) % p)
}

/// Characteristic polynomial (lowest degree first) via Hessenberg reduction.
pub(crate) fn char_poly(a: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = a.len();
    let mut h: Vec<Vec<u64>> = a.to_vec();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if piv != j + 1 {
            h.swap(piv, j + 1);
            for row in h.iter_mut() {
                row.swap(piv, j + 1);
            }
        }
        let inv = inv_mod(h[j + 1][j], p);
        for i in j + 2..n {
            let f = mul_mod(h[i][j], inv, p);
            if f == 0 {
                continue;
            }
            for c in 0..n {
                let sub = mul_mod(f, h[j + 1][c], p);
                h[i][c] = (h[i][c] + p - sub) % p;
            }
            for row in h.iter_mut() {
                let add = mul_mod(f, row[i], p);
                row[j + 1] = (row[j + 1] + add) % p;
            }
        }
    }
    // polys[m] = characteristic polynomial of the leading m×m block
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let hmm = h[m - 1][m - 1];
        let prev = &polys[m - 1];
        let mut next = vec![0u64; m + 1];
        for (k, &c) in prev.iter().enumerate() {
            next[k + 1] = (next[k + 1] + c) % p;
            next[k] = (next[k] + p - mul_mod(hmm, c, p)) % p;
        }
        let mut t = 1u64;
        for i in 1..m {
            t = mul_mod(t, h[m - i][m - i - 1], p);
            let coef = mul_mod(h[m - i - 1][m - 1], t, p);
            if coef == 0 {
                continue;
            }
            for (k, &c) in polys[m - i - 1].iter().enumerate() {
                next[k] = (next[k] + p - mul_mod(coef, c, p)) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().expect("n+1 polynomials")
}

/// Reduced row echelon basis of the span of `rows`.
pub(crate) fn row_reduce(mut rows: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    if rows.is_empty() {
        return rows;
    }
    let cols = rows[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][c], p);
        for x in rows[rank].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][c] != 0 {
                let f = rows[i][c];
                for k in 0..cols {
                    let sub = mul_mod(f, rows[rank][k], p);
                    rows[i][k] = (rows[i][k] + p - sub) % p;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rows
}

/// Basis of `{x : A x = 0}`.
pub(crate) fn nullspace(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.first().map_or(0, |r| r.len());
    let reduced = row_reduce(a.to_vec(), p);
    let pivots: Vec<usize> = reduced
        .iter()
        .map(|r| r.iter().position(|&x| x != 0).expect("nonzero row"))
        .collect();
    let mut out = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (row, &pc) in reduced.iter().zip(&pivots) {
            v[pc] = (p - row[free]) % p;
        }
        out.push(v);
    }
    out
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// `Σ_i |C_i| χ(g_i) conj(ψ(g_i))`; equals `|G|·[χ = ψ]`.
    pub fn row_inner_product(&self, a: usize, b: usize) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(self.exponent);
        for (i, c) in self.classes.iter().enumerate() {
            let t = &self.values[a][i] * &self.values[b][i].conj();
            acc = &acc + &t.scale(c.size as i64);
        }
        acc
    }

    /// `Σ_χ χ(g_i) conj(χ(g_j))`; equals `|C_G(g_i)|·[i = j]`.
    pub fn column_inner_product(&self, i: usize, j: usize) -> Cyclotomic {
        self.values.iter().fold(Cyclotomic::zero(self.exponent), |acc, row| {
            &acc + &(&row[i] * &row[j].conj())
        })
    }

    /// Whether row `row` has `p`-defect zero: `p ∤ |G|/χ(1)`.
    pub fn is_p_defect_zero(&self, row: usize, p: u64) -> bool {
        p_defect_zero(self, row, p)
    }

    /// Zero entries of a row.
    pub fn zero_classes(&self, row: usize) -> Vec<usize> {
        self.values[row]
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_zero())
            .map(|(i, _)| i)
            .collect()
    }
}

/// `p ∤ |G|/χ(1)`.
pub fn p_defect_zero(table: &CharacterTable, row: usize, p: u64) -> bool {
    (table.group_order / table.degrees[row]) % p != 0
}
