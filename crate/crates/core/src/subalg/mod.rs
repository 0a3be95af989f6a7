//! Weight-graded subspaces of the finite-dimensional algebras `𝒰_r`,
//! `𝒰_r^±` over GF(p), and the subalgebra generated by a finite set.

mod echelon;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pbw::{Element, Engine, Layout, Monomial, PrimeField, Ring};

pub use echelon::{Echelon, SparseRow};

/// Default cap on the dimension a closure may reach.
pub const DEFAULT_BUDGET: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Plus,
    Minus,
    Full,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Plus => "plus",
            Mode::Minus => "minus",
            Mode::Full => "full",
        })
    }
}

/// The monomials of `𝒰_r^+`, `𝒰_r^-` or `𝒰_r`: every used index below `p^r`.
///
/// Monomials are encoded as mixed-radix integers over the used slots in
/// layout order, so numeric order on codes is the monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientBox {
    pub mode: Mode,
    pub p: u32,
    pub r: u32,
    layout: Layout,
    bound: u64,
    slots: Vec<usize>,
}

impl AmbientBox {
    pub fn new(layout: Layout, mode: Mode, p: u32, r: u32) -> Result<AmbientBox> {
        let bound = (p as u64).checked_pow(r).filter(|&b| b <= u16::MAX as u64).ok_or_else(|| {
            Error::Config(format!("p^r = {}^{} is too large", p, r))
        })?;
        let slots: Vec<usize> = match mode {
            Mode::Plus => (0..layout.nu).map(|k| layout.e_slot(k)).collect(),
            Mode::Minus => (0..layout.nu).map(|k| layout.f_slot(k)).collect(),
            Mode::Full => (0..layout.len()).collect(),
        };
        if (bound as f64).powi(slots.len() as i32) >= u64::MAX as f64 {
            return Err(Error::Config("ambient box too large to index".into()));
        }
        Ok(AmbientBox { mode, p, r, layout, bound, slots })
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    /// `p^r`, one more than the largest allowed index.
    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn dimension(&self) -> u128 {
        (self.bound as u128).pow(self.slots.len() as u32)
    }

    pub fn encode(&self, m: &Monomial) -> Result<u64> {
        let mut code = 0u64;
        let mut used = 0usize;
        for &s in &self.slots {
            let x = m.0[s] as u64;
            if x >= self.bound {
                return Err(Error::OutOfBox(m.to_text(self.layout)));
            }
            used += (x > 0) as usize;
            code = code * self.bound + x;
        }
        if used != m.0.iter().filter(|&&x| x > 0).count() {
            return Err(Error::OutOfBox(m.to_text(self.layout)));
        }
        Ok(code)
    }

    pub fn decode(&self, mut code: u64) -> Monomial {
        let mut m = Monomial::one(self.layout);
        for &s in self.slots.iter().rev() {
            m.0[s] = (code % self.bound) as u16;
            code /= self.bound;
        }
        m
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        self.encode(m).is_ok()
    }

    /// All monomials of the box whose index at slot `s` stays below
    /// `bounds[s]`; used for spans like `{n_α < p^{a_α}}`.
    pub fn monomials_below(&self, bounds: &[u64]) -> Vec<Monomial> {
        let mut out = vec![Monomial::one(self.layout)];
        for &s in &self.slots {
            let b = bounds[s].min(self.bound);
            let mut next = Vec::with_capacity(out.len() * b as usize);
            for m in &out {
                for x in 0..b {
                    let mut m = m.clone();
                    m.0[s] = x as u16;
                    next.push(m);
                }
            }
            out = next;
        }
        out
    }
}

/// A labelled weight-homogeneous generator.
#[derive(Clone, Debug)]
pub struct Generator {
    pub label: String,
    pub element: Element<PrimeField>,
}

impl Generator {
    pub fn new(label: impl Into<String>, element: Element<PrimeField>) -> Generator {
        Generator { label: label.into(), element }
    }
}

#[derive(Clone, Debug)]
pub struct ClosureOptions {
    /// Stop once the closure dimension exceeds this.
    pub budget: usize,
    /// Only track weights `w` with `|w_i| ≤ window_i`. Components inside the
    /// window are exact when all generators have weights of one sign.
    pub window: Option<Vec<i32>>,
    /// Verify afterwards that the span is stable under left multiplication.
    pub check_left: bool,
}

impl Default for ClosureOptions {
    fn default() -> ClosureOptions {
        ClosureOptions { budget: DEFAULT_BUDGET, window: None, check_left: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Completeness {
    Complete,
    /// Exact only inside the weight window.
    Windowed,
    /// Stopped early; only positive membership answers are conclusive.
    Partial(String),
}

/// A subspace of an ambient box, stored one weight component at a time.
#[derive(Clone, Debug)]
pub struct GradedSubspace {
    ambient: AmbientBox,
    field: PrimeField,
    components: BTreeMap<Vec<i32>, Echelon>,
    pub completeness: Completeness,
}

impl GradedSubspace {
    pub fn new(ambient: AmbientBox, field: PrimeField) -> GradedSubspace {
        GradedSubspace { ambient, field, components: BTreeMap::new(), completeness: Completeness::Complete }
    }

    pub fn ambient(&self) -> &AmbientBox {
        &self.ambient
    }

    pub fn dimension(&self) -> usize {
        self.components.values().map(|c| c.rank()).sum()
    }

    pub fn is_complete(&self) -> bool {
        self.completeness == Completeness::Complete
    }

    pub fn components(&self) -> &BTreeMap<Vec<i32>, Echelon> {
        &self.components
    }

    fn split(&self, engine: &Engine<PrimeField>, x: &Element<PrimeField>) -> Result<BTreeMap<Vec<i32>, SparseRow>> {
        let alg = engine.algebra();
        let mut parts: BTreeMap<Vec<i32>, SparseRow> = BTreeMap::new();
        for (m, c) in x.terms() {
            let code = self.ambient.encode(m)?;
            parts.entry(alg.weight_of(m)).or_default().push((code, *c));
        }
        Ok(parts)
    }

    /// Whether `x` lies in the subspace.
    pub fn contains(&self, engine: &Engine<PrimeField>, x: &Element<PrimeField>) -> Result<bool> {
        for (w, v) in self.split(engine, x)? {
            let inside = match self.components.get(&w) {
                Some(c) => c.contains(&self.field, &v),
                None => v.is_empty(),
            };
            if !inside {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether a single basis monomial lies in the subspace.
    pub fn contains_monomial(&self, engine: &Engine<PrimeField>, m: &Monomial) -> Result<bool> {
        let code = self.ambient.encode(m)?;
        let w = engine.algebra().weight_of(m);
        Ok(self.components.get(&w).is_some_and(|c| c.contains_column(code)))
    }

    /// Adds a weight-homogeneous vector, returning whether the dimension grew.
    pub fn insert(&mut self, engine: &Engine<PrimeField>, x: &Element<PrimeField>) -> Result<bool> {
        let mut grew = false;
        for (w, v) in self.split(engine, x)? {
            grew |= self.components.entry(w).or_default().insert(&self.field, &v).is_some();
        }
        Ok(grew)
    }

    /// Pivot monomials of every component as `(weight, monomial text)`.
    pub fn pivot_monomials(&self) -> Vec<(Vec<i32>, String)> {
        let layout = self.ambient.layout();
        let mut out = Vec::new();
        for (w, c) in &self.components {
            let mut cols: Vec<u64> = c.pivot_columns().collect();
            cols.sort_unstable();
            out.extend(cols.into_iter().map(|col| (w.clone(), self.ambient.decode(col).to_text(layout))));
        }
        out
    }

    /// One CSV line `weight,monomial` per pivot.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("weight,pivot\n");
        for (w, m) in self.pivot_monomials() {
            let w: Vec<String> = w.iter().map(|x| x.to_string()).collect();
            out.push_str(&format!("\"{}\",{}\n", w.join(" "), m));
        }
        out
    }
}

/// A generator as a list of `(monomial, coefficient)` plus its weight.
struct Gen {
    terms: Vec<(Monomial, u32)>,
    weight: Vec<i32>,
}

fn prepare(ambient: &AmbientBox, gens: &[Generator]) -> Result<Vec<Gen>> {
    let mut out = Vec::new();
    for g in gens {
        if g.element.is_zero() {
            continue;
        }
        let ws = g.element.weights();
        if ws.len() != 1 {
            return Err(Error::Config(format!("generator {} is not weight-homogeneous", g.label)));
        }
        for m in g.element.terms().keys() {
            ambient.encode(m)?;
        }
        out.push(Gen {
            terms: g.element.terms().iter().map(|(m, c)| (m.clone(), *c)).collect(),
            weight: ws[0].clone(),
        });
    }
    Ok(out)
}

/// `row · g` (or `g · row`), each monomial product cached in `cache`.
fn times(
    engine: &Engine<PrimeField>,
    ambient: &AmbientBox,
    row: &[(u64, u32)],
    g: &Gen,
    left: bool,
    cache: &mut FxHashMap<u64, SparseRow>,
) -> Result<SparseRow> {
    let field = *engine.ring();
    let mut acc: FxHashMap<u64, u32> = FxHashMap::default();
    for &(code, c) in row {
        if !cache.contains_key(&code) {
            let m = ambient.decode(code);
            let mut prod: FxHashMap<u64, u32> = FxHashMap::default();
            for (t, tc) in &g.terms {
                let terms = if left { engine.mul_monomials(t, &m) } else { engine.mul_monomials(&m, t) };
                for (pm, pc) in terms {
                    let e = prod.entry(ambient.encode(&pm)?).or_insert(0);
                    *e = field.add(e, &field.mul(&pc, tc));
                }
            }
            cache.insert(code, prod.into_iter().filter(|&(_, v)| v != 0).collect());
        }
        for &(pc, pv) in &cache[&code] {
            let e = acc.entry(pc).or_insert(0);
            *e = field.add(e, &field.mul(&pv, &c));
        }
    }
    let mut out: SparseRow = acc.into_iter().filter(|&(_, v)| v != 0).collect();
    out.sort_unstable_by_key(|&(c, _)| c);
    Ok(out)
}

fn add_weights(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn in_window(w: &[i32], window: &Option<Vec<i32>>) -> bool {
    match window {
        Some(bound) => w.iter().zip(bound).all(|(x, b)| x.abs() <= *b),
        None => true,
    }
}

/// The unital subalgebra generated by `gens` inside `ambient`.
///
/// When every generator weight is nonzero and all weights lie on one side
/// (as for `Λ_r^±`), components are filled in order of `|height|` in a single
/// pass: each component is spanned by the finished components below it times
/// the generators. Otherwise a worklist runs to a fixpoint. Either way only
/// right multiplication is used; `check_left` confirms stability on the left.
pub fn span_closure(
    engine: &Engine<PrimeField>,
    gens: &[Generator],
    ambient: &AmbientBox,
    opts: &ClosureOptions,
) -> Result<GradedSubspace> {
    let field = *engine.ring();
    if field.p() != ambient.p {
        return Err(Error::Mismatch(format!("engine over {} for a box with p = {}", field.name(), ambient.p)));
    }
    let gs = prepare(ambient, gens)?;
    let alg = engine.algebra();
    let l = alg.layout().l;
    let mut space = GradedSubspace::new(ambient.clone(), field);
    let one = Monomial::one(alg.layout());
    space.components.entry(vec![0; l]).or_default().insert(&field, &[(ambient.encode(&one)?, 1)]);

    let positive = gs.iter().all(|g| g.weight.iter().all(|&x| x >= 0) && g.weight.iter().any(|&x| x > 0));
    let negative = gs.iter().all(|g| g.weight.iter().all(|&x| x <= 0) && g.weight.iter().any(|&x| x < 0));
    if positive || negative {
        graded_pass(engine, ambient, &gs, opts, &mut space)?;
    } else {
        worklist(engine, ambient, &gs, opts, &mut space)?;
    }
    if opts.window.is_some() && space.is_complete() {
        space.completeness = Completeness::Windowed;
    }
    if opts.check_left && space.is_complete() && (space.dimension() as u128) < ambient.dimension() {
        check_left_stable(engine, ambient, &gs, &space)?;
    }
    engine.clear_memo();
    Ok(space)
}

fn graded_pass(
    engine: &Engine<PrimeField>,
    ambient: &AmbientBox,
    gs: &[Gen],
    opts: &ClosureOptions,
    space: &mut GradedSubspace,
) -> Result<()> {
    let field = space.field;
    let height = |w: &Vec<i32>| w.iter().map(|x| x.abs()).sum::<i32>();
    let mut pending: BTreeSet<(i32, Vec<i32>)> = BTreeSet::new();
    for g in gs {
        if in_window(&g.weight, &opts.window) {
            pending.insert((height(&g.weight), g.weight.clone()));
        }
    }
    let mut total = space.dimension();
    while let Some((_, w)) = pending.pop_first() {
        let mut comp = Echelon::new();
        for g in gs {
            let src: Vec<i32> = w.iter().zip(&g.weight).map(|(x, y)| x - y).collect();
            let Some(source) = space.components.get(&src) else { continue };
            let mut cache = FxHashMap::default();
            for row in source.rows() {
                let v = times(engine, ambient, row, g, false, &mut cache)?;
                comp.insert(&field, &v);
            }
        }
        if comp.rank() == 0 {
            continue;
        }
        total += comp.rank();
        space.components.insert(w.clone(), comp);
        if total > opts.budget {
            space.completeness = Completeness::Partial(format!("dimension exceeded the budget {}", opts.budget));
            return Ok(());
        }
        for g in gs {
            let next = add_weights(&w, &g.weight);
            if in_window(&next, &opts.window) {
                pending.insert((height(&next), next));
            }
        }
    }
    Ok(())
}

fn worklist(
    engine: &Engine<PrimeField>,
    ambient: &AmbientBox,
    gs: &[Gen],
    opts: &ClosureOptions,
    space: &mut GradedSubspace,
) -> Result<()> {
    let field = space.field;
    let mut caches: Vec<FxHashMap<u64, SparseRow>> = gs.iter().map(|_| FxHashMap::default()).collect();
    let mut queue: VecDeque<(Vec<i32>, SparseRow)> = VecDeque::new();
    for (w, c) in &space.components {
        for row in c.rows() {
            queue.push_back((w.clone(), row.clone()));
        }
    }
    let mut total = space.dimension();
    while let Some((w, row)) = queue.pop_front() {
        for (gi, g) in gs.iter().enumerate() {
            let target = add_weights(&w, &g.weight);
            if !in_window(&target, &opts.window) {
                continue;
            }
            let v = times(engine, ambient, &row, g, false, &mut caches[gi])?;
            if v.is_empty() {
                continue;
            }
            if let Some(new) = space.components.entry(target.clone()).or_default().insert(&field, &v) {
                total += 1;
                queue.push_back((target, new));
                if total > opts.budget {
                    space.completeness =
                        Completeness::Partial(format!("dimension exceeded the budget {}", opts.budget));
                    return Ok(());
                }
            }
        }
    }
    space.components.retain(|_, c| c.rank() > 0);
    Ok(())
}

fn check_left_stable(
    engine: &Engine<PrimeField>,
    ambient: &AmbientBox,
    gs: &[Gen],
    space: &GradedSubspace,
) -> Result<()> {
    for g in gs {
        let mut cache = FxHashMap::default();
        for (w, comp) in &space.components {
            let target = add_weights(w, &g.weight);
            for row in comp.rows() {
                let v = times(engine, ambient, row, g, true, &mut cache)?;
                let ok = match space.components.get(&target) {
                    Some(c) => c.contains(&space.field, &v),
                    None => v.is_empty(),
                };
                if !ok {
                    return Err(Error::Invariant(format!(
                        "right closure is not stable under left multiplication at weight {:?}",
                        w
                    )));
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct Generation {
    pub generates_all: bool,
    pub dimension: usize,
    pub ambient_dimension: u128,
    pub completeness: Completeness,
}

pub fn check_generates(
    engine: &Engine<PrimeField>,
    gens: &[Generator],
    ambient: &AmbientBox,
    opts: &ClosureOptions,
) -> Result<Generation> {
    let s = span_closure(engine, gens, ambient, opts)?;
    Ok(Generation {
        generates_all: s.dimension() as u128 == ambient.dimension(),
        dimension: s.dimension(),
        ambient_dimension: ambient.dimension(),
        completeness: s.completeness,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Minimality {
    pub minimal: bool,
    /// Closure dimension with each non-unit generator removed.
    pub without: Vec<(String, usize)>,
    pub conclusive: bool,
}

/// Whether dropping any single non-unit generator loses generation.
pub fn check_minimal(
    engine: &Engine<PrimeField>,
    gens: &[Generator],
    ambient: &AmbientBox,
    opts: &ClosureOptions,
) -> Result<Minimality> {
    let one = Monomial::one(ambient.layout());
    let mut without = Vec::new();
    let mut minimal = true;
    let mut conclusive = true;
    for i in 0..gens.len() {
        let g = &gens[i].element;
        if g.len() == 1 && g.terms().contains_key(&one) {
            continue;
        }
        let rest: Vec<Generator> =
            gens.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
        let r = check_generates(engine, &rest, ambient, opts)?;
        conclusive &= r.completeness == Completeness::Complete;
        minimal &= !r.generates_all;
        without.push((gens[i].label.clone(), r.dimension));
    }
    Ok(Minimality { minimal, without, conclusive })
}

#[cfg(test)]
mod tests;
