//! Brute-force oracles, deliberately independent of the library's search
//! and construction paths. Shared with the acceptance suite.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// Integer arithmetic mod `p` without the library's field types.
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

/// A nonzero vector spanning the nullspace of an `r x c` matrix mod `p`,
/// by Gauss-Jordan elimination. Panics unless the nullspace is 1-dimensional.
pub fn nullspace_vector(rows: &[Vec<u64>], cols: usize, p: u64) -> Vec<u64> {
    let mut m: Vec<Vec<u64>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let inv = powmod(m[r][c], p - 2, p);
        for x in m[r].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let factor = m[i][c];
                let pivot = m[r].clone();
                for (x, &y) in m[i].iter_mut().zip(&pivot) {
                    *x = (*x + p - mulmod(factor, y, p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    assert_eq!(free.len(), 1, "nullspace is not one-dimensional");
    let f = free[0];
    let mut v = vec![0; cols];
    v[f] = 1;
    for (i, &c) in pivots.iter().enumerate() {
        v[c] = (p - m[i][f]) % p;
    }
    v
}

/// Rows `(a_1^i, ..., a_M^i)` for `0 <= i <= M-2`.
pub fn vandermonde_rows(a: &[u64], p: u64) -> Vec<Vec<u64>> {
    (0..a.len() as u64 - 1).map(|i| a.iter().map(|&x| powmod(x, i, p)).collect()).collect()
}

/// True when `u = λ v` for some nonzero `λ`.
pub fn proportional(u: &[u64], v: &[u64], p: u64) -> bool {
    let Some(k) = v.iter().position(|&x| x != 0) else { return false };
    if u[k] == 0 {
        return false;
    }
    let lambda = mulmod(u[k], powmod(v[k], p - 2, p), p);
    u.iter().zip(v).all(|(&x, &y)| x == mulmod(lambda, y, p))
}

/// `Z_d ⊂ F_p` by direct powering.
pub fn roots_of_unity(p: u64, d: u64) -> BTreeSet<u64> {
    (1..p).filter(|&x| powmod(x, d, p) == 1).collect()
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|q| q * q <= n).all(|q| !n.is_multiple_of(q))
}

pub fn proper_divisors(p: u64) -> Vec<u64> {
    (1..p - 1).filter(|d| (p - 1).is_multiple_of(*d)).collect()
}

/// Clique number of `Cay(F_p, Z_d)` by plain enumeration of all cliques.
pub fn naive_clique_number(p: u64, d: u64) -> usize {
    let z = roots_of_unity(p, d);
    let adj = |x: u64, y: u64| z.contains(&((x + p - y) % p));
    fn grow(cur: &mut Vec<u64>, from: u64, p: u64, adj: &dyn Fn(u64, u64) -> bool, best: &mut usize) {
        *best = (*best).max(cur.len());
        for v in from..p {
            if cur.iter().all(|&u| adj(u, v)) {
                cur.push(v);
                grow(cur, v + 1, p, adj, best);
                cur.pop();
            }
        }
    }
    let mut best = 0;
    grow(&mut Vec::new(), 0, p, &adj, &mut best);
    best
}

/// All unordered pairs `{A, B}`, `|A|, |B| >= 2`, with `A + B = Z_d`, found
/// by enumerating every `A ⊆ F_p` and every `B` inside its admissible set.
/// Pairs are returned smaller set first, ties broken lexicographically.
pub fn naive_sum_decompositions(p: u64, d: u64) -> BTreeSet<(Vec<u64>, Vec<u64>)> {
    let z = roots_of_unity(p, d);
    let target: u64 = z.iter().fold(0, |m, &x| m | 1 << x);
    let mut out = BTreeSet::new();
    for amask in 1u64..(1 << p) {
        if amask.count_ones() < 2 {
            continue;
        }
        let a: Vec<u64> = (0..p).filter(|&x| amask >> x & 1 == 1).collect();
        let admissible: Vec<u64> = (0..p).filter(|&b| a.iter().all(|&x| z.contains(&((x + b) % p)))).collect();
        let n = admissible.len();
        for sub in 1u64..(1 << n) {
            if sub.count_ones() < 2 {
                continue;
            }
            let b: Vec<u64> = (0..n).filter(|&i| sub >> i & 1 == 1).map(|i| admissible[i]).collect();
            let mut cover = 0u64;
            for &x in &a {
                for &y in &b {
                    cover |= 1 << ((x + y) % p);
                }
            }
            if cover == target {
                let pair = if (a.len(), &a) <= (b.len(), &b) { (a.clone(), b) } else { (b, a.clone()) };
                out.insert(pair);
            }
        }
    }
    out
}
