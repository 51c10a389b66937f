//! Independent oracles shared by the integration tests. Nothing here calls
//! the normal-form code; lattices are explored by walking generator steps
//! and group invariants come from gcds of minors.
#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use hnp_core::zlattice::SubLattice;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Point = Vec<i64>;

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn small(v: &[BigInt]) -> Point {
    v.iter().map(|x| x.to_i64().expect("small entry")).collect()
}

pub fn lattice(n: usize, gens: &[Point]) -> SubLattice {
    let cols: Vec<Vec<BigInt>> = gens.iter().map(|g| big(g)).collect();
    SubLattice::from_vectors(n, &cols).expect("generators have ambient length")
}

fn in_box(p: &[i64], bound: i64) -> bool {
    p.iter().all(|x| x.abs() <= bound)
}

/// Lattice points reachable from the origin by `±g` steps without leaving
/// `[-bound, bound]^n`.
pub fn walk_points(n: usize, gens: &[Point], bound: i64) -> HashSet<Point> {
    let mut seen = HashSet::from([vec![0; n]]);
    let mut queue = VecDeque::from([vec![0; n]]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            for sign in [1, -1] {
                let q: Point = p.iter().zip(g).map(|(a, b)| a + sign * b).collect();
                if in_box(&q, bound) && !seen.contains(&q) {
                    seen.insert(q.clone());
                    queue.push_back(q);
                }
            }
        }
    }
    seen
}

/// Points of the lattice spanned by the columns of a lower echelon basis
/// that fall in `[-bound, bound]^n`.
pub fn echelon_points(basis: &[Point], n: usize, bound: i64) -> HashSet<Point> {
    let pivots: Vec<usize> = basis
        .iter()
        .map(|c| c.iter().position(|&x| x != 0).expect("nonzero basis column"))
        .collect();
    let mut out = HashSet::new();
    let mut acc = vec![0i64; n];
    descend(basis, &pivots, 0, &mut acc, n, bound, &mut out);
    out
}

fn descend(
    basis: &[Point],
    pivots: &[usize],
    j: usize,
    acc: &mut Point,
    n: usize,
    bound: i64,
    out: &mut HashSet<Point>,
) {
    // Rows before the next pivot are final once columns 0..j are chosen.
    let settled = pivots.get(j).copied().unwrap_or(n);
    if acc[..settled].iter().any(|x| x.abs() > bound) {
        return;
    }
    if j == basis.len() {
        out.insert(acc.clone());
        return;
    }
    let (p, c) = (pivots[j], &basis[j]);
    let pivot = c[p];
    let lo = (-bound - acc[p]).div_euclid(pivot.abs()) - 1;
    let hi = (bound - acc[p]).div_euclid(pivot.abs()) + 1;
    for k in lo..=hi {
        let k = k * pivot.signum();
        for (a, x) in acc.iter_mut().zip(c) {
            *a += k * x;
        }
        if acc[p].abs() <= bound {
            descend(basis, pivots, j + 1, acc, n, bound, out);
        }
        for (a, x) in acc.iter_mut().zip(c) {
            *a -= k * x;
        }
    }
}

pub fn canonical_columns(l: &SubLattice) -> Vec<Point> {
    l.canonical().columns().map(|c| small(&c)).collect()
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// gcd of all `k x k` minors of the matrix whose columns are `gens`.
pub fn determinantal_divisor(n: usize, gens: &[Point], k: usize) -> i128 {
    let mut g = 0i128;
    for rows in subsets(n, k) {
        for cols in subsets(gens.len(), k) {
            let m: Vec<Vec<i128>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| gens[c][r] as i128).collect())
                .collect();
            g = g.gcd(&det(&m));
        }
    }
    g
}

/// `(free rank, nontrivial torsion factors)` of `Z^n / <gens>` from the
/// determinantal divisors.
pub fn oracle_invariants(n: usize, gens: &[Point]) -> (usize, Vec<i128>) {
    let mut divisors = vec![1i128];
    for k in 1..=n.min(gens.len()) {
        let d = determinantal_divisor(n, gens, k);
        if d == 0 {
            break;
        }
        divisors.push(d);
    }
    let rank = divisors.len() - 1;
    let torsion = divisors.windows(2).map(|w| w[1] / w[0]).filter(|&t| t != 1).collect();
    (n - rank, torsion)
}

/// gcd of the `k x k` minors that use the extra column `v`.
fn minors_with(n: usize, gens: &[Point], v: &[i64], k: usize) -> i128 {
    let mut g = 0i128;
    for rows in subsets(n, k) {
        for cols in subsets(gens.len(), k - 1) {
            let m: Vec<Vec<i128>> = rows
                .iter()
                .map(|&r| {
                    let mut row: Vec<i128> = cols.iter().map(|&c| gens[c][r] as i128).collect();
                    row.push(v[r] as i128);
                    row
                })
                .collect();
            g = g.gcd(&det(&m));
        }
    }
    g
}

/// Membership by comparing the gcd of maximal minors with and without `v`:
/// `v` is in a rank `r` lattice iff adjoining it keeps the rank and the gcd
/// of the `r x r` minors.
pub fn member_by_minors(n: usize, gens: &[Point], v: &[i64]) -> bool {
    let (free, _) = oracle_invariants(n, gens);
    let rank = n - free;
    let d = if rank == 0 { 1 } else { determinantal_divisor(n, gens, rank) };
    member_with(n, gens, rank, d, v)
}

fn member_with(n: usize, gens: &[Point], rank: usize, d: i128, v: &[i64]) -> bool {
    if rank < n && minors_with(n, gens, v, rank + 1) != 0 {
        return false;
    }
    rank == 0 || d.gcd(&minors_with(n, gens, v, rank)) == d
}

/// For full rank `<gens>` of index `d` with `d^n` small: the number of
/// elements of `Z^n/<gens>` killed by `k`, for each divisor `k` of `d`,
/// counted over coset representatives in `[0, d)^n`.
pub fn killed_counts(lat: &OracleLattice, d: i64) -> Vec<(i64, usize)> {
    let n = lat.n;
    let reps: Vec<Point> = (0..d.pow(n as u32))
        .map(|mut x| {
            (0..n)
                .map(|_| {
                    let c = x % d;
                    x /= d;
                    c
                })
                .collect()
        })
        .collect();
    let in_lattice = reps.iter().filter(|p| lat.member(p)).count();
    (1..=d)
        .filter(|k| d % k == 0)
        .map(|k| {
            let killed = reps
                .iter()
                .filter(|p| {
                    let kp: Point = p.iter().map(|x| k * x).collect();
                    lat.member(&kp)
                })
                .count();
            (k, killed / in_lattice)
        })
        .collect()
}

pub fn random_generators(rng: &mut ChaCha8Rng, n: usize, max_gens: usize, entry: i64) -> Vec<Point> {
    let g = rng.gen_range(0..=max_gens);
    (0..g).map(|_| (0..n).map(|_| rng.gen_range(-entry..=entry)).collect()).collect()
}

/// Exact membership for `<gens>`: walked points are certainly members, and
/// anything else is settled by the minors criterion.
pub struct OracleLattice {
    n: usize,
    gens: Vec<Point>,
    rank: usize,
    divisor: i128,
    pub walk: HashSet<Point>,
}

impl OracleLattice {
    pub fn new(n: usize, gens: &[Point], bound: i64) -> Self {
        let rank = n - oracle_invariants(n, gens).0;
        Self {
            n,
            gens: gens.to_vec(),
            rank,
            divisor: if rank == 0 { 1 } else { determinantal_divisor(n, gens, rank) },
            walk: walk_points(n, gens, bound),
        }
    }

    pub fn member(&self, v: &[i64]) -> bool {
        self.walk.contains(v) || member_with(self.n, &self.gens, self.rank, self.divisor, v)
    }

    /// Compares an enumerated point set of the box with this lattice: it
    /// must contain every walked point and nothing outside the lattice.
    pub fn matches(&self, points: &HashSet<Point>) -> bool {
        self.walk.is_subset(points) && points.difference(&self.walk).all(|p| self.member(p))
    }
}

/// Runs `cases` random comparisons of sum, intersection, membership and
/// quotient invariants against the oracles above, returning every
/// discrepancy found.
pub fn lattice_oracle_discrepancies(cases: usize, seed: u64, bound: i64) -> Vec<String> {
    use rayon::prelude::*;
    (0..cases)
        .into_par_iter()
        .flat_map_iter(|case| oracle_case(case, seed, bound))
        .collect()
}

/// One random case, seeded from `seed` and its index.
fn oracle_case(case: usize, seed: u64, bound: i64) -> Vec<String> {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (case as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut bad = Vec::new();
    {
        let n = rng.gen_range(1..=4);
        let ga = random_generators(&mut rng, n, 4, 3);
        let gb = random_generators(&mut rng, n, 4, 3);
        let (a, b) = (lattice(n, &ga), lattice(n, &gb));
        let (oa, ob) = (OracleLattice::new(n, &ga, bound), OracleLattice::new(n, &gb, bound));

        let pa = echelon_points(&canonical_columns(&a), n, bound);
        let pb = echelon_points(&canonical_columns(&b), n, bound);
        if !oa.matches(&pa) || !ob.matches(&pb) {
            bad.push(format!("case {case}: lattice points of {ga:?} or {gb:?}"));
        }

        let mut gs = ga.clone();
        gs.extend(gb.iter().cloned());
        let sum = a.sum(&b).unwrap();
        if !OracleLattice::new(n, &gs, bound).matches(&echelon_points(&canonical_columns(&sum), n, bound)) {
            bad.push(format!("case {case}: sum of {ga:?} and {gb:?}"));
        }

        let meet = echelon_points(&canonical_columns(&a.intersect(&b).unwrap()), n, bound);
        let walked_both = oa.walk.iter().all(|p| !ob.walk.contains(p) || meet.contains(p));
        let sound = meet.iter().all(|p| oa.member(p) && ob.member(p));
        let complete = pa.intersection(&pb).all(|p| meet.contains(p));
        if !(walked_both && sound && complete) {
            bad.push(format!("case {case}: intersection of {ga:?} and {gb:?}"));
        }

        for _ in 0..50 {
            let v: Point = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
            if a.contains(&big(&v)).unwrap() != oa.member(&v) {
                bad.push(format!("case {case}: membership of {v:?} in {ga:?}"));
            }
        }

        let inv = a.quotient_invariants();
        let (free, torsion) = oracle_invariants(n, &ga);
        let actual: Vec<i128> = inv.torsion.iter().map(|t| t.to_i128().unwrap()).collect();
        if inv.free_rank != free || actual != torsion {
            bad.push(format!("case {case}: invariants of Z^{n}/{ga:?}: {inv} vs free {free}, {torsion:?}"));
        }
        if free == 0 {
            let d: i128 = torsion.iter().product();
            if d.pow(n as u32) <= 4096 {
                for (k, count) in killed_counts(&oa, d as i64) {
                    let predicted: i128 = actual.iter().map(|t| (k as i128).gcd(t)).product();
                    if predicted != count as i128 {
                        bad.push(format!("case {case}: {k}-torsion count of Z^{n}/{ga:?}"));
                    }
                }
            }
        }
    }
    bad
}

/// Dense polynomial over the integers, constant term first.
pub type Poly = Vec<i64>;

fn poly_trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[i64], b: &[i64]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(out)
}

fn poly_add(a: &[i64], b: &[i64]) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    poly_trim(out)
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(vec![], 1)];
    }
    let mut out = Vec::new();
    for (p, sign) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // Inserting the largest element passes over len - pos others.
            let s = if (p.len() - pos) % 2 == 0 { sign } else { -sign };
            out.push((q, s));
        }
    }
    out
}

/// `det(V - t V^T)` by the Leibniz expansion over polynomial entries.
pub fn leibniz_alexander(v: &[Vec<i64>]) -> Poly {
    let s = v.len();
    let entry = |i: usize, j: usize| poly_trim(vec![v[i][j], -v[j][i]]);
    let mut total: Poly = vec![];
    for (p, sign) in permutations(s) {
        let mut term = vec![sign];
        for (i, &j) in p.iter().enumerate() {
            term = poly_mul(&term, &entry(i, j));
        }
        total = poly_add(&total, &term);
    }
    total
}

type QPoly = Vec<BigRational>;

fn q_trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn q_rem(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    let lead = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() {
        let factor = r.last().unwrap().clone() / &lead;
        let shift = r.len() - b.len();
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &factor * c;
        }
        r.pop();
        r = q_trim(r);
    }
    r
}

/// `Res(f, g)` by the Euclidean algorithm over the rationals.
pub fn euclid_resultant(f: &[i64], g: &[i64]) -> BigRational {
    let to_q = |p: &[i64]| q_trim(p.iter().map(|&c| BigRational::from_integer(c.into())).collect());
    let (mut f, mut g) = (to_q(f), to_q(g));
    if f.is_empty() || g.is_empty() {
        return BigRational::zero();
    }
    let mut acc = BigRational::one();
    loop {
        let (m, n) = (f.len() - 1, g.len() - 1);
        if m == 0 {
            // Res(c, g) = c^deg g.
            return acc * num_traits::pow(f[0].clone(), n);
        }
        if n == 0 {
            return acc * num_traits::pow(g[0].clone(), m);
        }
        let r = q_rem(&g, &f);
        if r.is_empty() {
            return BigRational::zero();
        }
        // Res(f, g) = lc(f)^{n-k} Res(f, r) = lc(f)^{n-k} (-1)^{mk} Res(r, f).
        let k = r.len() - 1;
        acc *= num_traits::pow(f[m].clone(), n - k);
        if m * k % 2 == 1 {
            acc = -acc;
        }
        g = f;
        f = r;
    }
}

/// `|H_1|` of the n-fold branched cover from the two oracles above.
pub fn oracle_cover_order(v: &[Vec<i64>], n: usize) -> BigInt {
    let delta = leibniz_alexander(v);
    let res = euclid_resultant(&delta, &vec![1; n]);
    assert!(res.is_integer(), "resultant of integer polynomials is an integer");
    res.to_integer().abs()
}
