//! Word metrics: the `D` functional, caret counts, exact word length by
//! breadth-first search, distortion of `F` in `T`, and the rotation subgroup.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::{word_to_diagram, MarkedPair};
use crate::dyadic::{two_adic_distance, Dyadic};
use crate::error::{Error, Result};
use crate::tree::Tree;
use crate::word::{Letter, PcqForm, Word};

/// `Σr + Σs + i_n + j_m + i` for a normal form `p c_i^j q`, absent parts
/// counting 0.
pub fn d_value(form: &PcqForm) -> u64 {
    let sum = |part: &[(u32, u32)]| part.iter().map(|&(_, e)| u64::from(e)).sum::<u64>();
    let top = |part: &[(u32, u32)]| part.last().map_or(0, |&(i, _)| u64::from(i));
    sum(form.p()) + sum(form.q()) + top(form.p()) + top(form.q()) + form.c().map_or(0, |(i, _)| u64::from(i))
}

/// Carets of the reduced diagram of `word`.
pub fn n_carets(word: &Word) -> usize {
    word_to_diagram(word).carets()
}

/// Finite generating sets, closed under inversion for searching.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenSet {
    /// `{x_0, x_1}`, generating `F`.
    X0X1,
    /// `{x_0, x_1, c_1}`.
    X0X1C1,
    /// `{x_0, x_1, c_0}`.
    X0X1C0,
}

impl GenSet {
    pub const ALL: [GenSet; 3] = [GenSet::X0X1, GenSet::X0X1C1, GenSet::X0X1C0];

    pub fn name(&self) -> &'static str {
        match self {
            GenSet::X0X1 => "x0x1",
            GenSet::X0X1C1 => "x0x1c1",
            GenSet::X0X1C0 => "x0x1c0",
        }
    }

    /// Generators and their inverses, each element once.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = vec![Letter::x(0, 1), Letter::x(0, -1), Letter::x(1, 1), Letter::x(1, -1)];
        match self {
            GenSet::X0X1 => {}
            GenSet::X0X1C1 => out.extend([Letter::c(1, 1), Letter::c(1, -1)]),
            GenSet::X0X1C0 => out.push(Letter::c(0, 1)),
        }
        out
    }

    pub fn diagrams(&self) -> Vec<MarkedPair> {
        self.letters().iter().map(MarkedPair::generator_diagram).collect()
    }
}

impl fmt::Display for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GenSet::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown generating set `{s}` (x0x1, x0x1c1, x0x1c0)")))
    }
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        builder = builder.num_threads(n.max(1));
    }
    builder.build().map_err(|e| Error::Internal(e.to_string()))
}

/// Right multiples of every frontier element by every generator, in
/// frontier order. The order is independent of the number of workers.
fn neighbours(pool: &rayon::ThreadPool, frontier: &[MarkedPair], gens: &[MarkedPair]) -> Vec<MarkedPair> {
    let products: Vec<Vec<MarkedPair>> =
        pool.install(|| frontier.par_iter().map(|g| gens.iter().map(|s| g.multiply(s)).collect()).collect());
    products.into_iter().flatten().collect()
}

/// Visits the spheres of the ball of `radius` around the identity, in order;
/// `visit(k, sphere)` sees the elements at distance exactly `k`. Only three
/// spheres are held in memory at a time.
pub fn for_each_sphere(
    gens: GenSet,
    radius: usize,
    jobs: Option<usize>,
    mut visit: impl FnMut(usize, &[MarkedPair]),
) -> Result<()> {
    let generators = gens.diagrams();
    let pool = pool(jobs)?;
    let mut previous: HashSet<MarkedPair> = HashSet::new();
    let mut current = vec![MarkedPair::identity()];
    let mut current_set: HashSet<MarkedPair> = current.iter().cloned().collect();
    visit(0, &current);
    for k in 1..=radius {
        let mut next = Vec::new();
        let mut next_set = HashSet::new();
        for h in neighbours(&pool, &current, &generators) {
            if !previous.contains(&h) && !current_set.contains(&h) && next_set.insert(h.clone()) {
                next.push(h);
            }
        }
        visit(k, &next);
        previous = current_set;
        current = next;
        current_set = next_set;
    }
    Ok(())
}

/// Every element of the ball with its distance from the identity.
pub fn ball(gens: GenSet, radius: usize, jobs: Option<usize>) -> Result<HashMap<MarkedPair, usize>> {
    let mut out = HashMap::new();
    for_each_sphere(gens, radius, jobs, |k, sphere| {
        out.extend(sphere.iter().map(|g| (g.clone(), k)));
    })?;
    Ok(out)
}

/// Exact word length of `g` over `gens` if it is at most `radius`, by a
/// search from both ends.
pub fn bfs_length(g: &MarkedPair, gens: GenSet, radius: usize) -> Option<usize> {
    bfs_length_with(g, gens, radius, None).ok().flatten()
}

pub fn bfs_length_with(g: &MarkedPair, gens: GenSet, radius: usize, jobs: Option<usize>) -> Result<Option<usize>> {
    let generators = gens.diagrams();
    let target = g.reduce();
    if target.is_identity() {
        return Ok(Some(0));
    }
    let pool = pool(jobs)?;
    // side 0 grows from the identity, side 1 from the target
    let mut seen = [HashMap::new(), HashMap::new()];
    let mut frontier = [vec![MarkedPair::identity()], vec![target.clone()]];
    let mut depth = [0usize, 0usize];
    seen[0].insert(MarkedPair::identity(), 0usize);
    seen[1].insert(target, 0usize);
    while depth[0] + depth[1] < radius {
        let side = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
        if frontier[side].is_empty() {
            return Ok(None);
        }
        depth[side] += 1;
        let mut next = Vec::new();
        let mut best: Option<usize> = None;
        for h in neighbours(&pool, &frontier[side], &generators) {
            if seen[side].contains_key(&h) {
                continue;
            }
            if let Some(&d) = seen[1 - side].get(&h) {
                let total = depth[side] + d;
                best = Some(best.map_or(total, |b| b.min(total)));
            }
            seen[side].insert(h.clone(), depth[side]);
            next.push(h);
        }
        if let Some(b) = best {
            return Ok((b <= radius).then_some(b));
        }
        frontier[side] = next;
    }
    Ok(None)
}

/// Upper bound on the size of a ball in a free group on `k` symmetric
/// generators.
fn ball_bound(generators: usize, radius: usize) -> f64 {
    let k = generators as f64;
    1.0 + (1..=radius).map(|i| k * (k - 1.0).powi(i as i32 - 1)).sum::<f64>()
}

/// Largest ball the reports are willing to enumerate.
pub const BALL_LIMIT: f64 = 2.0e7;

#[derive(Clone, Debug, Serialize)]
pub struct DistortionRow {
    pub word: String,
    #[serde(rename = "lenF")]
    pub len_f: usize,
    #[serde(rename = "lenT")]
    pub len_t: usize,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "D")]
    pub d: u64,
}

#[derive(Clone, Debug)]
pub struct DistortionReport {
    pub radius: usize,
    pub t_gens: GenSet,
    pub rows: Vec<DistortionRow>,
    /// Rows violating `lenT ≤ lenF`, `N ≤ 3·lenT` or `D ≤ 5·N`.
    pub violations: usize,
    /// Empirical maxima of `lenF / lenT` and `N / lenT` over rows with `lenT > 0`.
    pub max_len_ratio: f64,
    pub max_caret_ratio: f64,
}

fn word_text(form: &PcqForm) -> String {
    if form.is_identity() {
        "1".into()
    } else {
        form.to_string()
    }
}

/// Every element of the `F`-ball of `radius` over `{x_0, x_1}` with its
/// lengths in `F` and in `T` (over `t_gens`), caret count and `D` value.
pub fn distortion_report(radius: usize, t_gens: GenSet, jobs: Option<usize>) -> Result<DistortionReport> {
    let estimate = ball_bound(t_gens.letters().len(), radius);
    if estimate > BALL_LIMIT {
        return Err(Error::Budget(format!(
            "radius {radius} may need a ball of up to {estimate:.2e} elements over {t_gens} (limit {BALL_LIMIT:.0e})"
        )));
    }
    let t_ball = ball(t_gens, radius, jobs)?;
    let mut rows = Vec::new();
    for_each_sphere(GenSet::X0X1, radius, jobs, |len_f, sphere| {
        for g in sphere {
            let form = g.pcq_factorization();
            rows.push(DistortionRow {
                word: word_text(&form),
                len_f,
                len_t: t_ball[g],
                n: g.carets(),
                d: d_value(&form),
            });
        }
    })?;
    let violations = rows.iter().filter(|r| r.len_t > r.len_f || r.n > 3 * r.len_t || r.d > 5 * r.n as u64).count();
    let ratio = |f: fn(&DistortionRow) -> usize| {
        rows.iter().filter(|r| r.len_t > 0).map(|r| f(r) as f64 / r.len_t as f64).fold(0.0, f64::max)
    };
    let max_len_ratio = ratio(|r| r.len_f);
    let max_caret_ratio = ratio(|r| r.n);
    Ok(DistortionReport { radius, t_gens, rows, violations, max_len_ratio, max_caret_ratio })
}

fn to_csv<T: Serialize>(rows: &[T]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row).expect("in-memory csv");
    }
    String::from_utf8(writer.into_inner().expect("in-memory csv")).expect("utf-8")
}

impl DistortionReport {
    /// `word,lenF,lenT,N,D`
    pub fn to_csv(&self) -> String {
        if self.rows.is_empty() {
            return "word,lenF,lenT,N,D\n".into();
        }
        to_csv(&self.rows)
    }
}

/// The rotation of the circle by `a / 2^n`, in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rotation {
    a: u64,
    n: u32,
}

impl Rotation {
    /// Needs `0 ≤ a < 2^n` with `a` odd, or `a = n = 0`.
    pub fn new(a: u64, n: u32) -> Result<Rotation> {
        let canonical = if a == 0 { n == 0 } else { n < 64 && a % 2 == 1 && a < 1u64 << n };
        if !canonical {
            return Err(Error::InvalidArgument(format!("rotation {a}/2^{n} is not in lowest terms in [0, 1)")));
        }
        Ok(Rotation { a, n })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn amount(&self) -> Dyadic {
        Dyadic::new(self.a, self.n)
    }
}

/// Both trees complete of depth `n`, leaf `k` sent to leaf `k + a`.
pub fn rotation_element(r: Rotation) -> MarkedPair {
    let tree = Tree::complete(r.n);
    MarkedPair::new(tree.clone(), tree, r.a as usize).expect("mark below 2^n").reduce()
}

#[derive(Clone, Debug, Serialize)]
pub struct RotationRow {
    pub a: u64,
    pub n: u32,
    pub two_adic: String,
    pub carets: usize,
    /// Word length over `{x_0, x_1, c_0}`; empty if beyond the search radius.
    pub bfs_len: Option<usize>,
}

/// One row per rotation `a/2^n`, `n ≤ max_n`, plus the identity.
pub fn rotation_qie_report(max_n: u32, radius: usize, jobs: Option<usize>) -> Result<Vec<RotationRow>> {
    if max_n > 8 {
        return Err(Error::InvalidArgument(format!("max_n {max_n} exceeds 8")));
    }
    let lengths = ball(GenSet::X0X1C0, radius, jobs)?;
    let mut rows = Vec::new();
    let rotations = std::iter::once(Rotation { a: 0, n: 0 })
        .chain((1..=max_n).flat_map(|n| (1..1u64 << n).step_by(2).map(move |a| Rotation { a, n })));
    for r in rotations {
        let g = rotation_element(r);
        let distance: BigUint = two_adic_distance(&r.amount(), &Dyadic::zero());
        rows.push(RotationRow {
            a: r.a,
            n: r.n,
            two_adic: distance.to_string(),
            carets: g.carets(),
            bfs_len: lengths.get(&g).copied(),
        });
    }
    Ok(rows)
}

/// `a,n,two_adic,carets,bfs_len`
pub fn rotation_csv(rows: &[RotationRow]) -> String {
    to_csv(rows)
}
