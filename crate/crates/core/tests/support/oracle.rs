//! Brute-force reference implementations, written without the library's
//! solver, aggregation or checkers. Only plain data (ranks, counts) crosses
//! over from library types.

#![allow(dead_code)]

use std::cmp::Ordering;

use maxlot::{Alternative, Profile};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// A profile as rank vectors (lower rank = better) with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ballots {
    pub alts: usize,
    pub types: Vec<(Vec<usize>, u64)>,
}

impl Ballots {
    pub fn of(profile: &Profile) -> Self {
        let alts = profile.num_alternatives();
        let types = profile
            .types()
            .map(|(ty, count)| {
                let order = ty.as_order().expect("ordinal profile");
                ((0..alts).map(|x| order.rank(Alternative(x))).collect(), count)
            })
            .collect();
        Ballots { alts, types }
    }

    pub fn n(&self) -> u64 {
        self.types.iter().map(|(_, c)| c).sum()
    }

    pub fn with_counts(&self, counts: &[u64]) -> Self {
        Ballots {
            alts: self.alts,
            types: self
                .types
                .iter()
                .zip(counts)
                .filter(|(_, &c)| c > 0)
                .map(|((r, _), &c)| (r.clone(), c))
                .collect(),
        }
    }
}

fn sign(a: usize, b: usize) -> i64 {
    match a.cmp(&b) {
        Ordering::Less => 1,
        Ordering::Greater => -1,
        Ordering::Equal => 0,
    }
}

/// `M[x][y]` = voters preferring x to y minus voters preferring y to x.
pub fn margins(b: &Ballots) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; b.alts]; b.alts];
    for (ranks, count) in &b.types {
        for x in 0..b.alts {
            for y in 0..b.alts {
                m[x][y] += *count as i64 * sign(ranks[x], ranks[y]);
            }
        }
    }
    m
}

pub fn to_q(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    m.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
}

/// Solves a square system exactly; `None` unless the solution is unique.
pub fn solve_square(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for k in col..n {
            a[col][k] = &a[col][k] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in col..n {
                    let d = &f * &a[col][k];
                    a[r][k] = &a[r][k] - d;
                }
                let d = &f * &b[col];
                b[r] = &b[r] - d;
            }
        }
    }
    Some(b)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Vertices of `{p >= 0, sum p = 1, (p^T M)_y >= 0}`, sorted and deduplicated.
///
/// Inequality `i < n` is `p_i >= 0`; inequality `n + y` is column `y`. Every
/// choice of `n - 1` inequalities made tight, together with `sum p = 1`,
/// gives a candidate point.
pub fn vertices(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = m.len();
    let row_of = |i: usize| -> Vec<Q> {
        if i < n {
            (0..n).map(|j| if j == i { Q::one() } else { Q::zero() }).collect()
        } else {
            (0..n).map(|x| m[x][i - n].clone()).collect()
        }
    };
    let feasible = |p: &[Q]| {
        p.iter().all(|v| !v.is_negative())
            && (0..n).all(|y| {
                let s: Q = (0..n).map(|x| &p[x] * &m[x][y]).sum();
                !s.is_negative()
            })
    };
    let mut out = Vec::new();
    for tight in combinations(2 * n, n - 1) {
        let mut a: Vec<Vec<Q>> = tight.iter().map(|&i| row_of(i)).collect();
        let mut b = vec![Q::zero(); n - 1];
        a.push(vec![Q::one(); n]);
        b.push(Q::one());
        if let Some(p) = solve_square(a, b) {
            if feasible(&p) {
                out.push(p);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

pub fn lex_max(vertices: &[Vec<Q>]) -> Vec<Q> {
    vertices.iter().max().expect("non-empty maximal set").clone()
}

pub fn ranges(vertices: &[Vec<Q>]) -> Vec<(Q, Q)> {
    let n = vertices[0].len();
    (0..n)
        .map(|x| {
            let lo = vertices.iter().map(|v| v[x].clone()).min().unwrap();
            let hi = vertices.iter().map(|v| v[x].clone()).max().unwrap();
            (lo, hi)
        })
        .collect()
}

pub fn condorcet(m: &[Vec<i64>]) -> Option<usize> {
    (0..m.len()).find(|&x| (0..m.len()).all(|y| y == x || m[x][y] > 0))
}

pub fn degenerate(n: usize, x: usize) -> Vec<Q> {
    (0..n).map(|y| if y == x { Q::one() } else { Q::zero() }).collect()
}

pub fn ml(b: &Ballots) -> Vec<Q> {
    lex_max(&vertices(&to_q(&margins(b))))
}

pub fn cu(b: &Ballots) -> Vec<Q> {
    match condorcet(&margins(b)) {
        Some(x) => degenerate(b.alts, x),
        None => vec![q(1, b.alts as i64); b.alts],
    }
}

pub fn copeland(b: &Ballots) -> Vec<Q> {
    let m = margins(b);
    let scores: Vec<i64> = m.iter().map(|r| r.iter().map(|v| v.signum()).sum()).collect();
    let best = *scores.iter().max().unwrap();
    degenerate(b.alts, scores.iter().position(|&s| s == best).unwrap())
}

/// `sum_x sum_y p(x) q(y) sign(rank_y - rank_x)` for one voter.
pub fn pc(ranks: &[usize], p: &[Q], r: &[Q]) -> Q {
    let n = ranks.len();
    let mut total = Q::zero();
    for x in 0..n {
        for y in 0..n {
            let s = sign(ranks[x], ranks[y]);
            if s != 0 {
                total += &p[x] * &r[y] * int(s);
            }
        }
    }
    total
}

/// Group welfare of staying (`p`) over abstaining (`r`).
pub fn group_value(group: &Ballots, p: &[Q], r: &[Q]) -> Q {
    group.types.iter().map(|(ranks, c)| pc(ranks, p, r) * int(*c as i64)).sum()
}

/// `p` strictly SD-dominates `r`: for each rank threshold the mass at or above
/// it is at least as large, and larger for some threshold.
pub fn sd_strict(ranks: &[usize], p: &[Q], r: &[Q]) -> bool {
    let mut levels: Vec<usize> = ranks.to_vec();
    levels.sort();
    levels.dedup();
    let mut strict = false;
    for level in levels {
        let mass = |l: &[Q]| -> Q { (0..ranks.len()).filter(|&x| ranks[x] <= level).map(|x| l[x].clone()).sum() };
        match mass(p).cmp(&mass(r)) {
            Ordering::Less => return false,
            Ordering::Greater => strict = true,
            Ordering::Equal => {}
        }
    }
    strict
}

pub fn sd_equivalent(ranks: &[usize], p: &[Q], r: &[Q]) -> bool {
    !sd_strict(ranks, p, r) && !sd_strict(ranks, r, p) && {
        let mut levels: Vec<usize> = ranks.to_vec();
        levels.sort();
        levels.dedup();
        levels.into_iter().all(|level| {
            let mass =
                |l: &[Q]| -> Q { (0..ranks.len()).filter(|&x| ranks[x] <= level).map(|x| l[x].clone()).sum() };
            mass(p) == mass(r)
        })
    }
}

/// Every removal vector `0 <= r_i <= m_i` except all-zero and all-full.
pub fn groups(counts: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &m in counts {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<u64>| {
                (0..=m).map(move |r| {
                    let mut v = prefix.clone();
                    v.push(r);
                    v
                })
            })
            .collect();
    }
    out.retain(|r| r.iter().any(|&x| x > 0) && r != counts);
    out
}

/// Groups whose abstention violates participation (`cardinal`) or ordinal
/// participation, for the mechanism `f`.
pub fn abstention_violations(b: &Ballots, f: &dyn Fn(&Ballots) -> Vec<Q>) -> (usize, usize) {
    let counts: Vec<u64> = b.types.iter().map(|(_, c)| *c).collect();
    let present = f(b);
    let (mut cardinal, mut ordinal) = (0, 0);
    for removal in groups(&counts) {
        let group = b.with_counts(&removal);
        let kept: Vec<u64> = counts.iter().zip(&removal).map(|(m, r)| m - r).collect();
        let absent = f(&b.with_counts(&kept));
        if group_value(&group, &present, &absent).is_negative() {
            cardinal += 1;
        }
        if group.types.iter().all(|(ranks, _)| sd_strict(ranks, &absent, &present)) {
            ordinal += 1;
        }
    }
    (cardinal, ordinal)
}
