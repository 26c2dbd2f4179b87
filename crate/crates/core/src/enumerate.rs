//! Exact norm-shell enumeration for lattices and cosets.
//!
//! The search is Fincke-Pohst over an exact rational `LDL^T` factorisation of
//! an LLL-reduced Gram matrix. Floating point is used only to guess interval
//! endpoints; every endpoint is then corrected against the exact inequality.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{Coset, Lattice};
use crate::matrix::{int, rat, rat_int, Int, IntMatrix, Rat};

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumConfig {
    /// Maximum number of search-tree nodes before giving up.
    pub budget: u64,
    /// Worker threads; 0 means the global rayon pool.
    pub workers: usize,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            budget: DEFAULT_BUDGET,
            workers: 0,
        }
    }
}

impl EnumConfig {
    pub fn with_workers(self, workers: usize) -> Self {
        EnumConfig { workers, ..self }
    }

    pub fn with_budget(self, budget: u64) -> Self {
        EnumConfig { budget, ..self }
    }

    /// Honors `OLAB_BUDGET` when set to a positive integer.
    pub fn from_env() -> Self {
        let budget = std::env::var("OLAB_BUDGET")
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
            .filter(|&b| b > 0)
            .unwrap_or(DEFAULT_BUDGET);
        EnumConfig { budget, workers: 0 }
    }
}

/// LLL reduction (delta = 3/4) on a Gram matrix.
///
/// Returns unimodular `T` whose columns are the reduced basis in the original
/// coordinates, so the reduced Gram matrix is `T^T G T`.
pub fn lll_reduce(gram: &IntMatrix) -> IntMatrix {
    let n = gram.rows();
    let mut t = IntMatrix::identity(n);
    if n < 2 {
        return t;
    }
    let mut g = gram.clone();
    let delta = rat(3, 4);
    let mut k = 1;
    let mut guard = 0u64;
    while k < n {
        guard += 1;
        assert!(guard < 10_000_000, "LLL failed to terminate");
        let (mu, bstar) = gram_schmidt(&g);
        // size reduction of b_k
        let mut changed = false;
        let mut mu_k: Vec<Rat> = mu[k].clone();
        for j in (0..k).rev() {
            let q = round_rat(&mu_k[j]);
            if !q.is_zero() {
                add_column_multiple(&mut t, &mut g, k, j, &(-&q));
                for l in 0..j {
                    let d = rat_int(&q) * &mu[j][l];
                    mu_k[l] -= d;
                }
                mu_k[j] -= rat_int(&q);
                changed = true;
            }
        }
        let (bstar_k, mu_kk1) = if changed {
            let (mu2, b2) = gram_schmidt(&g);
            (b2[k].clone(), mu2[k][k - 1].clone())
        } else {
            (bstar[k].clone(), mu[k][k - 1].clone())
        };
        if bstar_k >= (&delta - &mu_kk1 * &mu_kk1) * &bstar[k - 1] {
            k += 1;
        } else {
            swap_columns(&mut t, &mut g, k, k - 1);
            k = (k - 1).max(1);
        }
    }
    t
}

fn round_rat(x: &Rat) -> Int {
    (x + rat(1, 2)).floor().to_integer()
}

// b_dst += q * b_src, on both T and G
fn add_column_multiple(t: &mut IntMatrix, g: &mut IntMatrix, dst: usize, src: usize, q: &Int) {
    let n = t.rows();
    for i in 0..n {
        let v = t.get(i, dst) + q * t.get(i, src);
        t.set(i, dst, v);
    }
    // G' = E^T G E with E = I + q e_src e_dst^T
    for i in 0..n {
        let v = g.get(i, dst) + q * g.get(i, src);
        g.set(i, dst, v);
    }
    for j in 0..n {
        let v = g.get(dst, j) + q * g.get(src, j);
        g.set(dst, j, v);
    }
}

fn swap_columns(t: &mut IntMatrix, g: &mut IntMatrix, a: usize, b: usize) {
    let n = t.rows();
    for i in 0..n {
        let x = t.get(i, a).clone();
        let y = t.get(i, b).clone();
        t.set(i, a, y);
        t.set(i, b, x);
    }
    for i in 0..n {
        let x = g.get(i, a).clone();
        let y = g.get(i, b).clone();
        g.set(i, a, y);
        g.set(i, b, x);
    }
    for j in 0..n {
        let x = g.get(a, j).clone();
        let y = g.get(b, j).clone();
        g.set(a, j, y);
        g.set(b, j, x);
    }
}

// mu[i][j] for j < i and squared GS norms, from the Gram matrix alone
fn gram_schmidt(g: &IntMatrix) -> (Vec<Vec<Rat>>, Vec<Rat>) {
    let n = g.rows();
    let mut mu = vec![vec![Rat::zero(); n]; n];
    let mut bstar = vec![Rat::zero(); n];
    for i in 0..n {
        for j in 0..i {
            let mut s = rat_int(g.get(i, j));
            for l in 0..j {
                s -= &mu[j][l] * &mu[i][l] * &bstar[l];
            }
            mu[i][j] = s / &bstar[j];
        }
        let mut s = rat_int(g.get(i, i));
        for l in 0..i {
            s -= &mu[i][l] * &mu[i][l] * &bstar[l];
        }
        bstar[i] = s;
    }
    (mu, bstar)
}

/// Exact `norm(y) = sum_i d[i] * (y_i + sum_{j>i} r[i][j] y_j)^2`.
struct Quadratic {
    n: usize,
    d: Vec<Rat>,
    r: Vec<Vec<Rat>>,
}

impl Quadratic {
    fn new(g: &IntMatrix) -> Self {
        let n = g.rows();
        let a = g.to_rat();
        let mut d = vec![Rat::zero(); n];
        let mut r = vec![vec![Rat::zero(); n]; n];
        // G = R^T D R, R unit upper triangular
        for i in 0..n {
            let mut s = a.get(i, i).clone();
            for k in 0..i {
                s -= &r[k][i] * &r[k][i] * &d[k];
            }
            d[i] = s;
            for j in i + 1..n {
                let mut s = a.get(i, j).clone();
                for k in 0..i {
                    s -= &r[k][i] * &r[k][j] * &d[k];
                }
                r[i][j] = s / &d[i];
            }
            r[i][i] = Rat::one();
        }
        Quadratic { n, d, r }
    }
}

/// Integers `x` with `d * (x - c)^2 <= rem`, as an inclusive range.
fn integer_window(d: &Rat, c: &Rat, rem: &Rat) -> Option<(Int, Int)> {
    if rem.is_negative() {
        return None;
    }
    let fits = |x: &Int| {
        let t = rat_int(x) - c;
        d * &t * &t <= *rem
    };
    // the integer minimiser of a convex quadratic is floor(c) or ceil(c)
    let anchor = [c.floor().to_integer(), c.ceil().to_integer()]
        .into_iter()
        .find(|x| fits(x))?;
    let cf = c.to_f64().unwrap_or(0.0);
    let w = (rem.to_f64().unwrap_or(0.0) / d.to_f64().unwrap_or(1.0))
        .max(0.0)
        .sqrt();
    let guess_lo = int((cf - w).ceil() as i64);
    let guess_hi = int((cf + w).floor() as i64);
    let mut lo = if guess_lo < anchor && fits(&guess_lo) {
        guess_lo
    } else {
        anchor.clone()
    };
    let mut hi = if guess_hi > anchor && fits(&guess_hi) {
        guess_hi
    } else {
        anchor
    };
    while fits(&(&lo - 1)) {
        lo -= 1;
    }
    while fits(&(&hi + 1)) {
        hi += 1;
    }
    Some((lo, hi))
}

#[derive(Clone, Copy)]
enum Sink {
    Count,
    Collect,
}

struct Search<'a> {
    q: &'a Quadratic,
    offset: &'a [Rat],
    bound: Rat,
    nodes: &'a AtomicU64,
    aborted: &'a AtomicBool,
    budget: u64,
    sink: Sink,
}

#[derive(Default)]
struct Found {
    counts: BTreeMap<Rat, u64>,
    vectors: Vec<(Vec<Rat>, Rat)>,
}

impl Search<'_> {
    // y[level+1..] fixed; `used` is the norm contribution of those coordinates
    fn descend(&self, level: usize, y: &mut Vec<Rat>, used: &Rat, out: &mut Found) -> Result<()> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget
            || self.aborted.load(Ordering::Relaxed)
        {
            self.aborted.store(true, Ordering::Relaxed);
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }
        let q = self.q;
        let mut centre = Rat::zero();
        for j in level + 1..q.n {
            centre -= &q.r[level][j] * &y[j];
        }
        let rem = &self.bound - used;
        // y_level = offset + x, x integer
        let c = &centre - &self.offset[level];
        let Some((lo, hi)) = integer_window(&q.d[level], &c, &rem) else {
            return Ok(());
        };
        let mut x = lo;
        while x <= hi {
            let yv = rat_int(&x) + &self.offset[level];
            let t = &yv - &centre;
            let here = used + &q.d[level] * &t * &t;
            y[level] = yv;
            if level == 0 {
                self.emit(y, here, out);
            } else {
                self.descend(level - 1, y, &here, out)?;
            }
            x += 1;
        }
        Ok(())
    }

    fn emit(&self, y: &[Rat], norm: Rat, out: &mut Found) {
        match self.sink {
            Sink::Count => *out.counts.entry(norm).or_insert(0) += 1,
            Sink::Collect => {
                *out.counts.entry(norm.clone()).or_insert(0) += 1;
                out.vectors.push((y.to_vec(), norm));
            }
        }
    }
}

fn run(l: &Lattice, offset: &[Rat], bound: &Rat, cfg: EnumConfig, sink: Sink) -> Result<Found> {
    let n = l.rank();
    if n == 0 {
        let mut f = Found::default();
        f.counts.insert(Rat::zero(), 1);
        if let Sink::Collect = sink {
            f.vectors.push((Vec::new(), Rat::zero()));
        }
        return Ok(f);
    }
    let t = lll_reduce(l.gram());
    let reduced = t.transpose().mul(l.gram())?.mul(&t)?;
    let t_rat = t.to_rat();
    let t_inv = t_rat.inverse().expect("unimodular");
    let off_reduced = t_inv.mul_vec(offset);
    let q = Quadratic::new(&reduced);
    let nodes = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let search = Search {
        q: &q,
        offset: &off_reduced,
        bound: bound.clone(),
        nodes: &nodes,
        aborted: &aborted,
        budget: cfg.budget,
        sink,
    };

    // split on the last one or two coordinates
    let top = n - 1;
    let mut prefixes: Vec<(Vec<Rat>, Rat)> = Vec::new();
    let c_top = -off_reduced[top].clone();
    if let Some((lo, hi)) = integer_window(&q.d[top], &c_top, bound) {
        let mut x = lo;
        while x <= hi {
            let yv = rat_int(&x) + &off_reduced[top];
            let used = &q.d[top] * &yv * &yv;
            prefixes.push((vec![yv], used));
            x += 1;
        }
    }
    if n >= 2 {
        let mut deeper = Vec::new();
        for (p, used) in prefixes {
            let lvl = top - 1;
            let centre = -(&q.r[lvl][top] * &p[0]);
            let c = &centre - &off_reduced[lvl];
            let rem = bound - &used;
            if let Some((lo, hi)) = integer_window(&q.d[lvl], &c, &rem) {
                let mut x = lo;
                while x <= hi {
                    let yv = rat_int(&x) + &off_reduced[lvl];
                    let t = &yv - &centre;
                    let u = &used + &q.d[lvl] * &t * &t;
                    deeper.push((vec![yv, p[0].clone()], u));
                    x += 1;
                }
            }
        }
        prefixes = deeper;
    }

    let prefix_nodes = prefixes.len() as u64 + 1;
    if nodes.fetch_add(prefix_nodes, Ordering::Relaxed) + prefix_nodes > cfg.budget {
        return Err(Error::BudgetExceeded { budget: cfg.budget });
    }

    let work = |(p, used): &(Vec<Rat>, Rat)| -> Result<Found> {
        let mut y = vec![Rat::zero(); n];
        let fixed = p.len();
        for (k, v) in p.iter().rev().enumerate() {
            y[n - fixed + k] = v.clone();
        }
        let mut out = Found::default();
        if fixed == n {
            search.emit(&y, used.clone(), &mut out);
        } else {
            search.descend(n - fixed - 1, &mut y, used, &mut out)?;
        }
        Ok(out)
    };
    let parts: Vec<Result<Found>> = if cfg.workers == 0 {
        prefixes.par_iter().map(work).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| Error::Precondition(e.to_string()))?;
        pool.install(|| prefixes.par_iter().map(work).collect())
    };
    let mut total = Found::default();
    for part in parts {
        let part = part?;
        for (k, v) in part.counts {
            *total.counts.entry(k).or_insert(0) += v;
        }
        total.vectors.extend(part.vectors);
    }
    if aborted.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded { budget: cfg.budget });
    }
    // back to the caller's coordinates: y = T y'
    for (v, _) in total.vectors.iter_mut() {
        *v = t_rat.mul_vec(v);
    }
    total.vectors.sort();
    Ok(total)
}

/// Counts of lattice vectors of each even norm `2, 4, ..., max_norm`.
pub fn shell_counts(l: &Lattice, max_norm: u64, cfg: EnumConfig) -> Result<BTreeMap<u64, u64>> {
    if max_norm < 2 {
        return Err(Error::Precondition("max_norm must be at least 2".into()));
    }
    let zero = vec![Rat::zero(); l.rank()];
    let found = run(l, &zero, &rat(max_norm as i64, 1), cfg, Sink::Count)?;
    let mut out: BTreeMap<u64, u64> = (1..=max_norm / 2).map(|k| (2 * k, 0)).collect();
    for (norm, c) in found.counts {
        let v = norm.to_integer().to_u64().expect("nonnegative norm");
        if v > 0 {
            *out.entry(v).or_insert(0) += c;
        }
    }
    Ok(out)
}

/// Counts of vectors of `rep + L` by (rational) norm, up to `max_norm`.
pub fn coset_shell_counts(c: &Coset, max_norm: u64, cfg: EnumConfig) -> Result<BTreeMap<Rat, u64>> {
    let found = run(
        &c.lattice,
        &c.rep,
        &rat(max_norm as i64, 1),
        cfg,
        Sink::Count,
    )?;
    let mut counts = found.counts;
    counts.remove(&Rat::zero());
    Ok(counts)
}

/// All vectors of `rep + L` with norm at most `max_norm` (zero vector excluded),
/// in lattice coordinates, sorted lexicographically.
pub fn short_vectors(c: &Coset, max_norm: &Rat, cfg: EnumConfig) -> Result<Vec<(Vec<Rat>, Rat)>> {
    let found = run(&c.lattice, &c.rep, max_norm, cfg, Sink::Collect)?;
    Ok(found
        .vectors
        .into_iter()
        .filter(|(_, n)| !n.is_zero())
        .collect())
}

/// Vectors of exactly the given norm.
pub fn shell(c: &Coset, norm: &Rat, cfg: EnumConfig) -> Result<Vec<Vec<Rat>>> {
    Ok(short_vectors(c, norm, cfg)?
        .into_iter()
        .filter(|(_, m)| m == norm)
        .map(|(v, _)| v)
        .collect())
}

/// Shell vectors as integer coordinates (the coset must be `L` itself).
pub fn lattice_shell(l: &Lattice, norm: u64, cfg: EnumConfig) -> Result<Vec<Vec<Int>>> {
    let c = Coset::zero(l.clone());
    Ok(shell(&c, &rat(norm as i64, 1), cfg)?
        .into_iter()
        .map(|v| v.into_iter().map(|x| x.to_integer()).collect())
        .collect())
}
