//! Right multiplication of a PBW monomial by a single divided-power factor.
//!
//! Everything reduces to products `x^(a) y^(b)` of two root-vector powers in
//! the wrong order. Those are expanded over ℤ from
//!
//! ```text
//! x y^(b)      = Σ_t y^(b−t) z_t,           z_t = (−ad y)^t (x) / t!
//! x^(a) y^(b)  = (1/a) Σ_t (x^(a−1) y^(b−t)) z_t
//! ```
//!
//! with the division by `a` checked to be exact, and cached. Other rings map
//! the integer expansions across.

use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::Zero;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::chevalley::LieElement;

use super::algebra::Algebra;
use super::monomial::{Layout, Letter, Monomial};
use super::ring::{binom, div_exact, Integers, Ring};

pub type Terms<R> = Vec<(Monomial, <R as Ring>::Elem)>;

/// `x_left^(a) · x_right^(b)` for root ids in non-canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct PairKey {
    left: u16,
    a: u16,
    right: u16,
    b: u16,
}

type PairFn<R> = fn(&Algebra, &Backend<R>, PairKey) -> Terms<R>;

const DEFAULT_MEMO_CAP: usize = 400_000;

pub(crate) struct Backend<R: Ring> {
    pub ring: R,
    pairs: Mutex<FxHashMap<PairKey, Arc<Terms<R>>>>,
    memo: Mutex<FxHashMap<(Monomial, Letter), Arc<Terms<R>>>>,
    memo_cap: usize,
    in_progress: Mutex<FxHashSet<PairKey>>,
    compute: PairFn<R>,
}

impl<R: Ring> fmt::Debug for Backend<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Backend")
            .field("ring", &self.ring)
            .field("pairs", &self.pairs.lock().unwrap().len())
            .finish()
    }
}

impl Backend<Integers> {
    pub fn integers() -> Backend<Integers> {
        Backend::with_compute(Integers, compute_pair_integer)
    }
}

impl<R: Ring> Backend<R> {
    /// A backend whose pair expansions are reduced from the integer ones.
    pub fn reduced(ring: R) -> Backend<R> {
        Backend::with_compute(ring, reduce_pair)
    }

    fn with_compute(ring: R, compute: PairFn<R>) -> Backend<R> {
        Backend {
            ring,
            pairs: Mutex::new(FxHashMap::default()),
            memo: Mutex::new(FxHashMap::default()),
            memo_cap: DEFAULT_MEMO_CAP,
            in_progress: Mutex::new(FxHashSet::default()),
            compute,
        }
    }

    fn pair(&self, alg: &Algebra, key: PairKey) -> Arc<Terms<R>> {
        if let Some(t) = self.pairs.lock().unwrap().get(&key) {
            return t.clone();
        }
        if !self.in_progress.lock().unwrap().insert(key) {
            panic!("cyclic straightening dependency at {:?}", key);
        }
        let t = Arc::new((self.compute)(alg, self, key));
        self.in_progress.lock().unwrap().remove(&key);
        self.pairs.lock().unwrap().insert(key, t.clone());
        t
    }

    pub fn clear_memo(&self) {
        self.memo.lock().unwrap().clear();
    }
}

/// Accumulates a linear combination of monomials.
pub(crate) struct Acc<'a, R: Ring> {
    ring: &'a R,
    map: FxHashMap<Monomial, R::Elem>,
}

impl<'a, R: Ring> Acc<'a, R> {
    pub fn new(ring: &'a R) -> Acc<'a, R> {
        Acc { ring, map: FxHashMap::default() }
    }

    pub fn add(&mut self, m: Monomial, c: R::Elem) {
        if self.ring.is_zero(&c) {
            return;
        }
        match self.map.get_mut(&m) {
            Some(v) => *v = self.ring.add(v, &c),
            None => {
                self.map.insert(m, c);
            }
        }
    }

    pub fn finish(self) -> Terms<R> {
        let ring = self.ring;
        self.map.into_iter().filter(|(_, c)| !ring.is_zero(c)).collect()
    }
}

fn binom_in<R: Ring>(ring: &R, t: i64, k: u32) -> R::Elem {
    if k == 0 {
        return ring.one();
    }
    if k == 1 {
        return ring.from_i64(t);
    }
    ring.from_bigint(&binom(t, k))
}

/// Index of the last factor of the positive part, if any.
fn last_e(layout: Layout, m: &Monomial) -> Option<usize> {
    m.e(layout).iter().rposition(|&x| x > 0)
}

/// Index of the last factor of the negative part (smallest position).
fn last_f(layout: Layout, m: &Monomial) -> Option<usize> {
    m.f(layout).iter().position(|&x| x > 0)
}

fn has_e(layout: Layout, m: &Monomial) -> bool {
    m.e(layout).iter().any(|&x| x > 0)
}

fn has_h(layout: Layout, m: &Monomial) -> bool {
    m.h(layout).iter().any(|&x| x > 0)
}

/// Adds `c · m · x` to `acc`.
pub(crate) fn rmul_into<R: Ring>(
    alg: &Algebra,
    be: &Backend<R>,
    m: &Monomial,
    x: Letter,
    c: &R::Elem,
    acc: &mut Acc<'_, R>,
) {
    let ring = &be.ring;
    let layout = alg.layout();
    match x {
        Letter::E(_, 0) | Letter::F(_, 0) | Letter::H(_, 0) => acc.add(m.clone(), c.clone()),
        Letter::E(k, n) => {
            let k = k as usize;
            match last_e(layout, m) {
                Some(j) if j > k => {}
                Some(j) if j == k => {
                    let slot = layout.e_slot(k);
                    let old = m.0[slot];
                    let mut out = m.clone();
                    out.0[slot] = old + n;
                    let coef = binom_in(ring, (old + n) as i64, n as u32);
                    acc.add(out, ring.mul(c, &coef));
                    return;
                }
                _ => {
                    let mut out = m.clone();
                    out.0[layout.e_slot(k)] = n;
                    acc.add(out, c.clone());
                    return;
                }
            }
            add_memo(alg, be, m, x, c, acc);
        }
        Letter::H(i, n) => {
            let i = i as usize;
            let shift = -alg.e_pairing(m, i);
            let slot = layout.h_slot(i);
            let a = m.0[slot] as u32;
            // (h + shift choose n) = Σ_c C(shift, n − c) (h choose c), then
            // (h choose a)(h choose c) = Σ_d C(a+c−d, a) C(a, d) (h choose a+c−d)
            let mut coeffs: FxHashMap<u32, BigInt> = FxHashMap::default();
            for cc in 0..=n as u32 {
                let s = binom(shift, n as u32 - cc);
                if s.is_zero() {
                    continue;
                }
                for d in 0..=a.min(cc) {
                    let v = &s * binom((a + cc - d) as i64, a) * binom(a as i64, d);
                    *coeffs.entry(a + cc - d).or_insert_with(BigInt::zero) += v;
                }
            }
            for (deg, v) in coeffs {
                let mut out = m.clone();
                out.0[slot] = deg as u16;
                acc.add(out, ring.mul(c, &ring.from_bigint(&v)));
            }
        }
        Letter::F(k, n) => {
            if !has_e(layout, m) && !has_h(layout, m) {
                let k = k as usize;
                match last_f(layout, m) {
                    Some(j) if j < k => {}
                    Some(j) if j == k => {
                        let slot = layout.f_slot(k);
                        let old = m.0[slot];
                        let mut out = m.clone();
                        out.0[slot] = old + n;
                        let coef = binom_in(ring, (old + n) as i64, n as u32);
                        acc.add(out, ring.mul(c, &coef));
                        return;
                    }
                    _ => {
                        let mut out = m.clone();
                        out.0[layout.f_slot(k)] = n;
                        acc.add(out, c.clone());
                        return;
                    }
                }
            }
            add_memo(alg, be, m, x, c, acc);
        }
    }
}

fn add_memo<R: Ring>(
    alg: &Algebra,
    be: &Backend<R>,
    m: &Monomial,
    x: Letter,
    c: &R::Elem,
    acc: &mut Acc<'_, R>,
) {
    let key = (m.clone(), x);
    let cached = be.memo.lock().unwrap().get(&key).cloned();
    let terms = match cached {
        Some(t) => t,
        None => {
            let t = Arc::new(rmul_slow(alg, be, m, x));
            let mut memo = be.memo.lock().unwrap();
            if memo.len() >= be.memo_cap {
                memo.clear();
            }
            memo.insert(key, t.clone());
            t
        }
    };
    for (mm, cc) in terms.iter() {
        acc.add(mm.clone(), be.ring.mul(c, cc));
    }
}

/// `m · x` in the cases that need a reordering.
fn rmul_slow<R: Ring>(alg: &Algebra, be: &Backend<R>, m: &Monomial, x: Letter) -> Terms<R> {
    let ring = &be.ring;
    let layout = alg.layout();
    let one = ring.one();
    let mut acc = Acc::new(ring);
    match x {
        Letter::E(k, n) => {
            // m = m0 · e_j^(c) with j after k
            let j = last_e(layout, m).unwrap();
            let mut m0 = m.clone();
            let c = std::mem::take(&mut m0.0[layout.e_slot(j)]);
            let key = PairKey { left: alg.root_at(j) as u16, a: c, right: alg.root_at(k as usize) as u16, b: n };
            for (t, ct) in be.pair(alg, key).iter() {
                mul_monomials_into(alg, be, &m0, t, ct, &mut acc);
            }
        }
        Letter::F(k, n) => {
            let k = k as usize;
            if has_e(layout, m) {
                let mut fh = m.clone();
                let mut e_only = Monomial::one(layout);
                for s in 0..layout.nu {
                    e_only.0[layout.e_slot(s)] = std::mem::take(&mut fh.0[layout.e_slot(s)]);
                }
                if fh.is_one() {
                    let j = last_e(layout, m).unwrap();
                    let mut e0 = e_only.clone();
                    let c = std::mem::take(&mut e0.0[layout.e_slot(j)]);
                    let key = PairKey {
                        left: alg.root_at(j) as u16,
                        a: c,
                        right: alg.root_system().neg(alg.root_at(k)) as u16,
                        b: n,
                    };
                    for (t, ct) in be.pair(alg, key).iter() {
                        mul_monomials_into(alg, be, &e0, t, ct, &mut acc);
                    }
                } else {
                    let mut inner = Acc::new(ring);
                    rmul_into(alg, be, &e_only, x, &one, &mut inner);
                    for (t, ct) in inner.finish() {
                        mul_monomials_into(alg, be, &fh, &t, &ct, &mut acc);
                    }
                }
            } else {
                // H · f^(n) = f^(n) · H', with h_i shifted by −n⟨β_k, α_i^∨⟩
                let beta = alg.root_at(k);
                let mut h_terms: Vec<(Vec<u16>, R::Elem)> = vec![(vec![0; layout.l], one.clone())];
                for i in 0..layout.l {
                    let a = m.0[layout.h_slot(i)];
                    if a == 0 {
                        continue;
                    }
                    let s = -(n as i64) * alg.root_system().pairing(beta, i) as i64;
                    let mut next = Vec::new();
                    for cc in 0..=a {
                        let v = binom_in(ring, s, (a - cc) as u32);
                        if ring.is_zero(&v) {
                            continue;
                        }
                        for (h, hc) in &h_terms {
                            let mut h = h.clone();
                            h[i] = cc;
                            next.push((h, ring.mul(hc, &v)));
                        }
                    }
                    h_terms = next;
                }
                let mut f_only = m.clone();
                for i in 0..layout.l {
                    f_only.0[layout.h_slot(i)] = 0;
                }
                let mut fa = Acc::new(ring);
                if last_f(layout, &f_only).is_some_and(|j| j < k) {
                    let j = last_f(layout, &f_only).unwrap();
                    let mut f0 = f_only.clone();
                    let c = std::mem::take(&mut f0.0[layout.f_slot(j)]);
                    let rs = alg.root_system();
                    let key = PairKey {
                        left: rs.neg(alg.root_at(j)) as u16,
                        a: c,
                        right: rs.neg(alg.root_at(k)) as u16,
                        b: n,
                    };
                    for (t, ct) in be.pair(alg, key).iter() {
                        mul_monomials_into(alg, be, &f0, t, ct, &mut fa);
                    }
                } else {
                    rmul_into(alg, be, &f_only, x, &one, &mut fa);
                }
                for (fm, fc) in fa.finish() {
                    for (h, hc) in &h_terms {
                        let mut out = fm.clone();
                        for i in 0..layout.l {
                            out.0[layout.h_slot(i)] = h[i];
                        }
                        acc.add(out, ring.mul(&fc, hc));
                    }
                }
            }
        }
        Letter::H(..) => unreachable!("torus factors are handled inline"),
    }
    acc.finish()
}

/// Adds `c · a · b` to `acc`.
pub(crate) fn mul_monomials_into<R: Ring>(
    alg: &Algebra,
    be: &Backend<R>,
    a: &Monomial,
    b: &Monomial,
    c: &R::Elem,
    acc: &mut Acc<'_, R>,
) {
    let layout = alg.layout();
    if b.is_one() {
        acc.add(a.clone(), c.clone());
        return;
    }
    if a.is_one() {
        acc.add(b.clone(), c.clone());
        return;
    }
    let ring = &be.ring;
    let letters = b.letters(layout);
    let (last, init) = letters.split_last().unwrap();
    let mut cur: Terms<R> = vec![(a.clone(), c.clone())];
    for &x in init {
        let mut next = Acc::new(ring);
        for (m, mc) in &cur {
            rmul_into(alg, be, m, x, mc, &mut next);
        }
        cur = next.finish();
    }
    for (m, mc) in &cur {
        rmul_into(alg, be, m, *last, mc, acc);
    }
}

fn reduce_pair<R: Ring>(alg: &Algebra, be: &Backend<R>, key: PairKey) -> Terms<R> {
    alg.integer
        .pair(alg, key)
        .iter()
        .map(|(m, c)| (m.clone(), be.ring.from_bigint(c)))
        .filter(|(_, c)| !be.ring.is_zero(c))
        .collect()
}

fn compute_pair_integer(alg: &Algebra, be: &Backend<Integers>, key: PairKey) -> Terms<Integers> {
    let rs = alg.root_system();
    let sc = alg.constants();
    let t = alg.cartan_type();
    let (x, y) = (key.left as usize, key.right as usize);
    let (a, b) = (key.a, key.b);
    let ey = LieElement::root_vector(t, y);

    let mut zs = vec![LieElement::root_vector(t, x)];
    for s in 1..=b as i64 {
        let z = sc.bracket(&ey, zs.last().unwrap()).expect("same root system").scale(-1);
        let z = z
            .div_exact(s)
            .unwrap_or_else(|| panic!("(ad e_{})^{} e_{} is not divisible by {}", rs.name(y), s, rs.name(x), s));
        if z.is_zero() {
            break;
        }
        zs.push(z);
    }

    let layout = alg.layout();
    let ring = &be.ring;
    let mut acc = Acc::new(ring);
    for (s, z) in zs.iter().enumerate() {
        let rest = b - s as u16;
        let left: Terms<Integers> = if a == 1 {
            vec![(alg.monomial_of_root(y, rest), BigInt::from(1))]
        } else if rest == 0 {
            vec![(alg.monomial_of_root(x, a - 1), BigInt::from(1))]
        } else {
            be.pair(alg, PairKey { left: key.left, a: a - 1, right: key.right, b: rest }).to_vec()
        };
        for (letter, zc) in alg.lie_letters(z) {
            let zc = BigInt::from(zc);
            for (m, mc) in &left {
                rmul_into(alg, be, m, letter, &(mc * &zc), &mut acc);
            }
        }
    }
    let mut out = acc.finish();
    if a > 1 {
        let d = BigInt::from(a);
        for (m, c) in out.iter_mut() {
            *c = div_exact(c, &d).unwrap_or_else(|| {
                panic!(
                    "integrality violated expanding e_{}^({}) e_{}^({}): coefficient {} of {} not divisible by {}",
                    rs.name(x),
                    a,
                    rs.name(y),
                    b,
                    c,
                    m.to_text(layout),
                    a
                )
            });
        }
    }
    out
}
