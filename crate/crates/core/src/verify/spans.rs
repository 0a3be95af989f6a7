//! Checks on the subalgebras generated inside `𝒰_r^±`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::pbw::{Algebra, Element, Engine, Monomial, PrimeField};
use crate::rootsys::{ExponentCase, ExponentTable, Family};
use crate::subalg::{
    check_generates, check_minimal, span_closure, AmbientBox, ClosureOptions, Completeness, GradedSubspace, Generator,
    Mode,
};

use super::Ctx;

/// `1` and `e_i^(p^s)` (or `f_i^(p^s)`) for every simple `i` and `s < r`.
pub(super) fn lambda(alg: &Arc<Algebra>, field: PrimeField, r: u32, mode: Mode) -> Vec<Generator> {
    let rs = alg.root_system();
    let mut gens = vec![Generator::new("1", Element::one(alg, field))];
    let sides: &[bool] = match mode {
        Mode::Plus => &[true],
        Mode::Minus => &[false],
        Mode::Full => &[true, false],
    };
    for &plus in sides {
        for i in 0..rs.rank() {
            for s in 0..r {
                let n = field.p().pow(s) as u16;
                let (id, x) = if plus { (i, 'e') } else { (rs.neg(i), 'f') };
                gens.push(Generator::new(format!("{}{}^({})", x, i + 1, n), Element::root_power(alg, field, id, n)));
            }
        }
    }
    gens
}

/// `e_θ^(p^{r−1})` (or `f`) for each given positive root.
pub(super) fn extra(alg: &Arc<Algebra>, field: PrimeField, r: u32, roots: &[usize], plus: bool) -> Vec<Generator> {
    let rs = alg.root_system();
    let n = field.p().pow(r - 1) as u16;
    roots
        .iter()
        .map(|&t| {
            let (id, x) = if plus { (t, 'e') } else { (rs.neg(t), 'f') };
            Generator::new(format!("{}[{}]^({})", x, rs.name(t), n), Element::root_power(alg, field, id, n))
        })
        .collect()
}

pub(super) fn options(ctx: &Ctx, window: Option<Vec<i32>>) -> ClosureOptions {
    ClosureOptions { budget: ctx.budget, window, check_left: true }
}

/// Closure that must be exact (or exact inside its window).
pub(super) fn closure(
    engine: &Engine<PrimeField>,
    gens: &[Generator],
    ambient: &AmbientBox,
    opts: &ClosureOptions,
) -> Result<GradedSubspace> {
    let s = span_closure(engine, gens, ambient, opts)?;
    match &s.completeness {
        Completeness::Partial(m) => Err(Error::Budget(m.clone())),
        _ => Ok(s),
    }
}

/// Per-slot index bounds `p^{a_α}` on the side of `mode`.
pub(super) fn table_bounds(alg: &Algebra, table: &ExponentTable, mode: Mode) -> Vec<u64> {
    let layout = alg.layout();
    let mut bounds = vec![1u64; layout.len()];
    for k in 0..layout.nu {
        let b = table.bound(alg.root_at(k));
        match mode {
            Mode::Plus => bounds[layout.e_slot(k)] = b,
            Mode::Minus => bounds[layout.f_slot(k)] = b,
            Mode::Full => {
                bounds[layout.e_slot(k)] = b;
                bounds[layout.f_slot(k)] = b;
            }
        }
    }
    bounds
}

/// Every monomial of `𝒰_{r−1}^±`, as a box at level `r`.
fn previous_level(alg: &Algebra, ambient: &AmbientBox) -> Vec<Monomial> {
    let b = ambient.bound() / ambient.p as u64;
    ambient.monomials_below(&vec![b; alg.layout().len()])
}

fn count_contained(engine: &Engine<PrimeField>, s: &GradedSubspace, ms: &[Monomial]) -> Result<usize> {
    let mut n = 0;
    for m in ms {
        n += s.contains_monomial(engine, m)? as usize;
    }
    Ok(n)
}

fn side(mode: Mode) -> &'static str {
    match mode {
        Mode::Plus => "U_r^+",
        Mode::Minus => "U_r^-",
        Mode::Full => "U_r",
    }
}

struct Setup {
    field: PrimeField,
    engine: Engine<PrimeField>,
    table: ExponentTable,
}

fn setup(ctx: &Ctx) -> Result<Setup> {
    let field = PrimeField::new(ctx.p())?;
    let table = ctx.alg.root_system().exponent_table(ctx.p(), ctx.r())?;
    Ok(Setup { field, engine: Engine::new(&ctx.alg, field), table })
}

fn containment(ctx: &mut Ctx, engine: &Engine<PrimeField>, s: &GradedSubspace, ambient: &AmbientBox) -> Result<()> {
    if ctx.r() < 2 {
        return Ok(());
    }
    let ms = previous_level(&ctx.alg, ambient);
    let n = count_contained(engine, s, &ms)?;
    ctx.record(
        format!("basis monomials of the previous level inside the span ({} monomials)", ms.len()),
        ms.len(),
        "the span at level r contains the whole previous level",
        n,
    );
    Ok(())
}

pub(super) fn equality(ctx: &mut Ctx) -> Result<()> {
    let st = setup(ctx)?;
    if st.table.case != ExponentCase::Full {
        return Err(ctx.unsupported("p is small for this type, so the span is a proper subalgebra"));
    }
    let ambient = AmbientBox::new(ctx.alg.layout(), Mode::Plus, ctx.p(), ctx.r())?;
    let gens = lambda(&ctx.alg, st.field, ctx.r(), Mode::Plus);
    let s = closure(&st.engine, &gens, &ambient, &options(ctx, None))?;
    ctx.record(
        "dimension of the span of 1, e_i^(p^s), s < r",
        ambient.dimension(),
        "every commutator [e_i, e_gamma] along a Hasse path has coefficient +-1, +-2 or +-3, all invertible here",
        s.dimension(),
    );
    let rs = ctx.alg.root_system().clone();
    let n = ctx.p().pow(ctx.r() - 1) as u16;
    let mut reached = 0;
    for id in 0..rs.num_positive() {
        reached += s.contains_monomial(&st.engine, &ctx.alg.monomial_of_root(id, n))? as usize;
    }
    ctx.record(
        format!("top divided powers e_alpha^({}) inside the span", n),
        rs.num_positive(),
        "each positive root is reached along a Hasse path",
        reached,
    );
    Ok(())
}

fn memberships_from_file(ctx: &mut Ctx, engine: &Engine<PrimeField>, s: &GradedSubspace) -> Result<usize> {
    let t = ctx.alg.cartan_type();
    let rs = ctx.alg.root_system().clone();
    let n = ctx.p().pow(ctx.r() - 1) as u16;
    let entries: Vec<_> = ctx.expect.memberships(t, ctx.p()).cloned().collect();
    for e in &entries {
        let id = rs.parse_root(&e.root)?;
        let inside = s.contains_monomial(engine, &ctx.alg.monomial_of_root(id, n))?;
        ctx.record(format!("e[{}]^({}) in the span (expectations table)", e.root, n), e.member, e.provenance.clone(), inside);
    }
    Ok(entries.len())
}

pub(super) fn membership(ctx: &mut Ctx) -> Result<()> {
    if !matches!(ctx.family(), Family::B | Family::C | Family::F) || ctx.p() != 2 {
        return Err(ctx.unsupported("membership by root class is stated for types B, C, F at p = 2"));
    }
    let st = setup(ctx)?;
    let rs = ctx.alg.root_system().clone();
    let hasse = rs.hasse()?;
    let ambient = AmbientBox::new(ctx.alg.layout(), Mode::Plus, 2, ctx.r())?;
    let gens = lambda(&ctx.alg, st.field, ctx.r(), Mode::Plus);
    // At r = 1 only the weights of single roots matter, so the highest root
    // bounds the weights that need computing.
    let window = (ctx.r() == 1).then(|| rs.root(rs.num_positive() - 1).coords.clone());
    let s = closure(&st.engine, &gens, &ambient, &options(ctx, window))?;
    containment(ctx, &st.engine, &s, &ambient)?;
    let n = 2u16.pow(ctx.r() - 1);
    let mut expected = BTreeMap::new();
    let mut actual = BTreeMap::new();
    for id in 0..rs.num_positive() {
        expected.insert(rs.name(id), hasse.in_c0(id) || !rs.is_long(id));
        actual.insert(rs.name(id), s.contains_monomial(&st.engine, &ctx.alg.monomial_of_root(id, n))?);
    }
    ctx.record(
        format!("e_alpha^({}) in the span exactly for alpha short or in the long-simple component", n),
        expected,
        "same-length Hasse paths have commutator coefficients +-1; a long root outside that component needs a coefficient 2",
        actual,
    );
    memberships_from_file(ctx, &st.engine, &s)?;
    Ok(())
}

pub(super) fn generates(ctx: &mut Ctx) -> Result<()> {
    if !matches!(ctx.family(), Family::B | Family::C | Family::F) || ctx.p() != 2 {
        return Err(ctx.unsupported("the Hasse-diagram generating set is stated for types B, C, F at p = 2"));
    }
    let st = setup(ctx)?;
    let rs = ctx.alg.root_system().clone();
    let hasse = rs.hasse()?;
    let ambient = AmbientBox::new(ctx.alg.layout(), Mode::Plus, 2, ctx.r())?;
    if ambient.dimension() > ctx.budget as u128 {
        return Err(Error::Budget(format!("U_r^+ has dimension {} above the budget {}", ambient.dimension(), ctx.budget)));
    }
    let mut gens = lambda(&ctx.alg, st.field, ctx.r(), Mode::Plus);
    gens.extend(extra(&ctx.alg, st.field, ctx.r(), &hasse.theta, true));
    if ctx.family() != Family::F {
        let names = |v: &[usize]| v.iter().map(|&k| rs.name(k)).collect::<Vec<_>>();
        ctx.record(
            "minimal roots of the long components without long simple roots",
            names(st.table.theta()),
            st.table.case.describe(),
            names(&hasse.theta),
        );
    }
    let g = check_generates(&st.engine, &gens, &ambient, &options(ctx, None))?;
    ctx.record(
        "dimension of the span with the minimal roots of the other long components added",
        ambient.dimension(),
        "each remaining long root is reached from its component's minimal root along long arrows with coefficient +-1",
        g.dimension,
    );
    Ok(())
}

pub(super) fn g2_membership(ctx: &mut Ctx) -> Result<()> {
    if ctx.family() != Family::G || !matches!(ctx.p(), 2 | 3) {
        return Err(ctx.unsupported("stated for G2 at p = 2 and p = 3"));
    }
    let st = setup(ctx)?;
    let ambient = AmbientBox::new(ctx.alg.layout(), Mode::Plus, ctx.p(), ctx.r())?;
    let gens = lambda(&ctx.alg, st.field, ctx.r(), Mode::Plus);
    let s = closure(&st.engine, &gens, &ambient, &options(ctx, None))?;
    containment(ctx, &st.engine, &s, &ambient)?;
    let n = memberships_from_file(ctx, &st.engine, &s)?;
    if n == 0 {
        return Err(ctx.unsupported("no membership expectations recorded"));
    }
    Ok(())
}

/// Dimension and basis of the span of `Λ_r^±`.
fn basis_on(ctx: &mut Ctx, st: &Setup, mode: Mode) -> Result<usize> {
    let ambient = AmbientBox::new(ctx.alg.layout(), mode, ctx.p(), ctx.r())?;
    let gens = lambda(&ctx.alg, st.field, ctx.r(), mode);
    let s = closure(&st.engine, &gens, &ambient, &options(ctx, None))?;
    let expected = st.table.dimension();
    ctx.record(
        format!("dimension of the span of the generators inside {}", side(mode)),
        expected,
        format!("product of p^a over positive roots; {}", st.table.case.describe()),
        s.dimension(),
    );
    if let Some(e) = ctx.expect.dimension(ctx.alg.cartan_type(), ctx.p(), ctx.r()).cloned() {
        ctx.record("dimension against the expectations table", e.value, e.provenance, s.dimension());
    }
    let listed = ambient.monomials_below(&table_bounds(&ctx.alg, &st.table, mode));
    let n = count_contained(&st.engine, &s, &listed)?;
    ctx.record(
        format!("listed monomials with indices below p^a inside the span ({} monomials)", listed.len()),
        s.dimension(),
        "distinct PBW monomials are independent, so this many contained monomials form a basis",
        n,
    );
    Ok(s.dimension())
}

/// `Λ_r^± ∪ Θ` generates `𝒰_r^±`, and no generator can be dropped.
fn minimal_on(ctx: &mut Ctx, st: &Setup, mode: Mode) -> Result<()> {
    let ambient = AmbientBox::new(ctx.alg.layout(), mode, ctx.p(), ctx.r())?;
    if ambient.dimension() > ctx.budget as u128 {
        return Err(Error::Budget(format!("{} has dimension {} above the budget {}", side(mode), ambient.dimension(), ctx.budget)));
    }
    let mut gens = lambda(&ctx.alg, st.field, ctx.r(), mode);
    gens.extend(extra(&ctx.alg, st.field, ctx.r(), st.table.theta(), mode == Mode::Plus));
    let labels: Vec<String> = gens.iter().map(|g| g.label.clone()).collect();
    let opts = options(ctx, None);
    let g = check_generates(&st.engine, &gens, &ambient, &opts)?;
    if let Completeness::Partial(m) = g.completeness {
        return Err(Error::Budget(m));
    }
    ctx.record(
        format!("dimension of the span of {:?}", labels),
        ambient.dimension(),
        st.table.case.describe(),
        g.dimension,
    );
    let m = check_minimal(&st.engine, &gens, &ambient, &opts)?;
    if !m.conclusive {
        return Err(Error::Budget("a reduced generating set exceeded the budget".into()));
    }
    let dims: BTreeMap<String, usize> = m.without.iter().cloned().collect();
    let below = dims.values().all(|&d| (d as u128) < ambient.dimension());
    ctx.record_if(
        format!("span dimension with each generator removed stays below {}", ambient.dimension()),
        format!("< {}", ambient.dimension()),
        "every simple e_i^(p^s) is needed for its weight and each extra root vector is the only way to reach its root",
        dims,
        below && m.minimal,
    );
    Ok(())
}

pub(super) fn basis(ctx: &mut Ctx) -> Result<()> {
    let st = setup(ctx)?;
    basis_on(ctx, &st, Mode::Plus)?;
    Ok(())
}

pub(super) fn minimal(ctx: &mut Ctx) -> Result<()> {
    let st = setup(ctx)?;
    minimal_on(ctx, &st, Mode::Plus)
}

pub(super) fn minus(ctx: &mut Ctx) -> Result<()> {
    let st = setup(ctx)?;
    let minus = basis_on(ctx, &st, Mode::Minus)?;
    let ambient = AmbientBox::new(ctx.alg.layout(), Mode::Plus, ctx.p(), ctx.r())?;
    let plus = closure(&st.engine, &lambda(&ctx.alg, st.field, ctx.r(), Mode::Plus), &ambient, &options(ctx, None))?;
    ctx.record(
        "negative-side dimension equals the positive-side dimension",
        plus.dimension(),
        "the Chevalley involution swaps e_alpha and f_alpha up to sign",
        minus,
    );
    minimal_on(ctx, &st, Mode::Minus)
}
