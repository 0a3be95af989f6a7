//! A Chevalley basis `{e_α, h_i}` with signed integer structure constants.
//!
//! Signs are fixed by declaring every extraspecial pair positive and
//! propagating through the standard identities between structure constants
//! (Carter, *Simple groups of Lie type*, §4.2). The result is verified against
//! the Jacobi identity.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::rootsys::{CartanType, Family, RootSystem};

/// Element of the Lie algebra over ℤ, `Σ c_α e_α + Σ d_i h_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieElement {
    pub cartan_type: CartanType,
    pub e: BTreeMap<usize, i64>,
    pub h: Vec<i64>,
}

impl LieElement {
    pub fn zero(cartan_type: CartanType) -> LieElement {
        LieElement { cartan_type, e: BTreeMap::new(), h: vec![0; cartan_type.rank] }
    }

    pub fn root_vector(cartan_type: CartanType, id: usize) -> LieElement {
        let mut x = LieElement::zero(cartan_type);
        x.e.insert(id, 1);
        x
    }

    pub fn cartan(cartan_type: CartanType, i: usize) -> LieElement {
        let mut x = LieElement::zero(cartan_type);
        x.h[i] = 1;
        x
    }

    pub fn is_zero(&self) -> bool {
        self.e.is_empty() && self.h.iter().all(|&c| c == 0)
    }

    pub fn add_root(&mut self, id: usize, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.e.entry(id).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.e.remove(&id);
        }
    }

    pub fn add_scaled(&mut self, other: &LieElement, c: i64) {
        for (&id, &v) in &other.e {
            self.add_root(id, c * v);
        }
        for (a, b) in self.h.iter_mut().zip(&other.h) {
            *a += c * b;
        }
    }

    pub fn scale(&self, c: i64) -> LieElement {
        let mut out = LieElement::zero(self.cartan_type);
        out.add_scaled(self, c);
        out
    }

    /// Exact division of every coefficient, `None` if some coefficient is not
    /// divisible.
    pub fn div_exact(&self, d: i64) -> Option<LieElement> {
        if self.e.values().chain(&self.h).any(|v| v % d != 0) {
            return None;
        }
        let mut out = self.clone();
        out.e.values_mut().for_each(|v| *v /= d);
        out.h.iter_mut().for_each(|v| *v /= d);
        Some(out)
    }
}

#[derive(Clone, Debug)]
pub struct StructureConstants {
    rs: Arc<RootSystem>,
    // n[a * 2ν + b] = N_{α_a, α_b}
    n: Vec<i8>,
}

impl StructureConstants {
    pub fn new(rs: Arc<RootSystem>) -> Result<StructureConstants> {
        let n = compute_table(&rs)?;
        let mut sc = StructureConstants { rs, n };
        if sc.rs.cartan_type().family == Family::G {
            sc.pin_g2_signs()?;
        }
        if sc.dimension() <= 80 {
            sc.verify_jacobi()?;
        }
        Ok(sc)
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn cartan_type(&self) -> CartanType {
        self.rs.cartan_type()
    }

    /// Dimension of the Lie algebra.
    pub fn dimension(&self) -> usize {
        self.rs.num_roots() + self.rs.rank()
    }

    /// `N_{α,β}` with `[e_α, e_β] = N_{α,β} e_{α+β}`, zero when `α+β ∉ Φ`.
    pub fn n(&self, a: usize, b: usize) -> i32 {
        self.n[a * self.rs.num_roots() + b] as i32
    }

    /// `[e_α, e_{−α}]` over `h_1, …, h_l` for a root id `α`.
    pub fn cartan_of(&self, a: usize) -> Vec<i64> {
        let rs = &self.rs;
        let c = rs.coroot_coords(rs.abs(a));
        let sign = if rs.is_positive(a) { 1 } else { -1 };
        c.iter().map(|&x| sign * x as i64).collect()
    }

    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> Result<LieElement> {
        let t = self.cartan_type();
        if x.cartan_type != t || y.cartan_type != t {
            return Err(Error::Mismatch(format!(
                "bracket of {} and {} elements in {}",
                x.cartan_type, y.cartan_type, t
            )));
        }
        let rs = &self.rs;
        let l = rs.rank();
        let mut out = LieElement::zero(t);
        for (&a, &ca) in &x.e {
            for (&b, &cb) in &y.e {
                if b == rs.neg(a) {
                    let h = self.cartan_of(a);
                    for i in 0..l {
                        out.h[i] += ca * cb * h[i];
                    }
                } else if let Some(s) = rs.add(a, b) {
                    out.add_root(s, ca * cb * self.n(a, b) as i64);
                }
            }
            // [e_α, h] = −⟨α, h⟩ e_α
            let w: i64 = (0..l).map(|i| y.h[i] * rs.pairing(a, i) as i64).sum();
            out.add_root(a, -ca * w);
        }
        for (&b, &cb) in &y.e {
            let w: i64 = (0..l).map(|i| x.h[i] * rs.pairing(b, i) as i64).sum();
            out.add_root(b, cb * w);
        }
        Ok(out)
    }

    fn basis(&self) -> Vec<LieElement> {
        let t = self.cartan_type();
        let mut b: Vec<LieElement> =
            (0..self.rs.num_roots()).map(|id| LieElement::root_vector(t, id)).collect();
        b.extend((0..self.rs.rank()).map(|i| LieElement::cartan(t, i)));
        b
    }

    fn basis_name(&self, k: usize) -> String {
        if k < self.rs.num_roots() {
            format!("e[{}]", self.rs.name(k))
        } else {
            format!("h{}", k - self.rs.num_roots() + 1)
        }
    }

    /// Checks `[x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0` on all basis triples.
    pub fn verify_jacobi(&self) -> Result<()> {
        let basis = self.basis();
        let m = basis.len();
        let mut table = vec![vec![None::<LieElement>; m]; m];
        for i in 0..m {
            for j in 0..m {
                table[i][j] = Some(self.bracket(&basis[i], &basis[j])?);
            }
        }
        let br = |x: usize, y: &LieElement| self.bracket(&basis[x], y);
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let mut s = br(i, table[j][k].as_ref().unwrap())?;
                    s.add_scaled(&br(j, table[k][i].as_ref().unwrap())?, 1);
                    s.add_scaled(&br(k, table[i][j].as_ref().unwrap())?, 1);
                    if !s.is_zero() {
                        return Err(Error::Jacobi(self.basis_name(i), self.basis_name(j), self.basis_name(k)));
                    }
                }
            }
        }
        Ok(())
    }

    /// Rescales root vectors so that, with `1 = α₁` and `2 = α₂`,
    /// `[e1,e2] = e12`, `[e1,e12] = 2e112`, `[e1,e112] = 3e1112`,
    /// `[e2,e1112] = e11122` and `[e112,e12] = 3e11122`.
    fn pin_g2_signs(&mut self) -> Result<()> {
        let rs = self.rs.clone();
        let id = |v: [i32; 2]| rs.id_of(&v).unwrap();
        let wanted = [
            (id([1, 0]), id([0, 1]), 1),
            (id([1, 0]), id([1, 1]), 2),
            (id([1, 0]), id([2, 1]), 3),
            (id([0, 1]), id([3, 1]), 1),
            (id([2, 1]), id([1, 1]), 3),
        ];
        let nu = rs.num_positive();
        for mask in 0u32..(1 << nu) {
            let s = |a: usize| if mask >> rs.abs(a) & 1 == 1 { -1 } else { 1 };
            let ok = wanted.iter().all(|&(a, b, v)| {
                s(a) * s(b) * s(rs.add(a, b).unwrap()) * self.n(a, b) == v
            });
            if ok {
                let m = rs.num_roots();
                for a in 0..m {
                    for b in 0..m {
                        if let Some(c) = rs.add(a, b) {
                            self.n[a * m + b] *= (s(a) * s(b) * s(c)) as i8;
                        }
                    }
                }
                return Ok(());
            }
        }
        Err(Error::Invariant("no sign rescaling reproduces the G2 relations".into()))
    }

    /// CSV table `alpha_id,beta_id,N` over all pairs with `α+β ∈ Φ`.
    pub fn to_csv(&self) -> String {
        let m = self.rs.num_roots();
        let mut out = String::from("alpha_id,beta_id,N\n");
        for a in 0..m {
            for b in 0..m {
                if self.rs.add(a, b).is_some() {
                    writeln!(out, "{},{},{}", a, b, self.n(a, b)).unwrap();
                }
            }
        }
        out
    }
}

type Q = Ratio<i64>;

fn compute_table(rs: &RootSystem) -> Result<Vec<i8>> {
    let nu = rs.num_positive();
    let m = rs.num_roots();
    // Positive-positive constants, filled in height order of the sum.
    let mut pos = vec![vec![None::<i64>; nu]; nu];
    let norm = |id: usize| rs.norm(id) as i64;

    // N for an arbitrary pair whose positive constituents are already known.
    let n_any = |pos: &Vec<Vec<Option<i64>>>, a: usize, b: usize| -> Q {
        let get = |x: usize, y: usize| -> Q {
            Q::from_integer(pos[x][y].unwrap_or_else(|| panic!("missing N({}, {})", rs.name(x), rs.name(y))))
        };
        let s = rs.add(a, b).expect("n_any on a non-root sum");
        match (rs.is_positive(a), rs.is_positive(b)) {
            (true, true) => get(a, b),
            (false, false) => -get(rs.neg(a), rs.neg(b)),
            (true, false) => {
                if rs.is_positive(s) {
                    -Q::new(norm(s), norm(a)) * get(rs.neg(b), s)
                } else {
                    Q::new(norm(s), norm(b)) * get(rs.neg(s), a)
                }
            }
            (false, true) => {
                if rs.is_positive(s) {
                    // N_{a,b} = −N_{b,a}, with b positive and a negative
                    Q::new(norm(s), norm(b)) * get(rs.neg(a), s)
                } else {
                    -Q::new(norm(s), norm(a)) * get(rs.neg(s), b)
                }
            }
        }
    };

    for xi in 0..nu {
        let mut pairs = Vec::new();
        for a in 0..nu {
            for b in a + 1..nu {
                if rs.add(a, b) == Some(xi) {
                    pairs.push((a, b));
                }
            }
        }
        let Some(&(z, e)) = pairs.first() else { continue };
        let (p, _) = rs.root_string(z, &rs.root(e).coords)?;
        let nze = (p + 1) as i64;
        pos[z][e] = Some(nze);
        pos[e][z] = Some(-nze);
        for &(a, b) in &pairs[1..] {
            let mut t = Q::from_integer(0);
            if let Some(bz) = rs.add(b, rs.neg(z)) {
                t += n_any(&pos, b, rs.neg(z)) * n_any(&pos, a, rs.neg(e)) / Q::from_integer(norm(bz));
            }
            if let Some(az) = rs.add(a, rs.neg(z)) {
                t += n_any(&pos, rs.neg(z), a) * n_any(&pos, b, rs.neg(e)) / Q::from_integer(norm(az));
            }
            let v = Q::from_integer(norm(xi)) * t / Q::from_integer(nze);
            if !v.is_integer() {
                return Err(Error::Invariant(format!("non-integral N({}, {})", rs.name(a), rs.name(b))));
            }
            pos[a][b] = Some(v.to_integer());
            pos[b][a] = Some(-v.to_integer());
        }
    }

    let mut n = vec![0i8; m * m];
    for a in 0..m {
        for b in 0..m {
            if rs.add(a, b).is_some() {
                let v = n_any(&pos, a, b);
                let (p, _) = rs.root_string(a, &rs.root(b).coords)?;
                if !v.is_integer() || v.to_integer().abs() != (p + 1) as i64 {
                    return Err(Error::Invariant(format!(
                        "N({}, {}) = {} violates |N| = p + 1",
                        rs.name(a),
                        rs.name(b),
                        v
                    )));
                }
                n[a * m + b] = v.to_integer() as i8;
            }
        }
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(f: Family, l: usize) -> StructureConstants {
        StructureConstants::new(Arc::new(RootSystem::new(f, l).unwrap())).unwrap()
    }

    #[test]
    fn g2_relations() {
        let c = sc(Family::G, 2);
        let rs = c.root_system().clone();
        let id = |s: &str| rs.parse_root(s).unwrap();
        assert_eq!(c.n(id("a1"), id("a2")), 1);
        assert_eq!(c.n(id("a1"), id("a1+a2")), 2);
        assert_eq!(c.n(id("a1"), id("2a1+a2")), 3);
        assert_eq!(c.n(id("a2"), id("3a1+a2")), 1);
        assert_eq!(c.n(id("2a1+a2"), id("a1+a2")), 3);
    }

    #[test]
    fn simple_brackets() {
        let c = sc(Family::B, 2);
        let t = c.cartan_type();
        let rs = c.root_system().clone();
        let e1 = LieElement::root_vector(t, 0);
        let f1 = LieElement::root_vector(t, rs.neg(0));
        assert_eq!(c.bracket(&e1, &f1).unwrap(), LieElement::cartan(t, 0));
        assert!(c.bracket(&e1, &e1).unwrap().is_zero());
        assert_eq!(c.n(0, rs.parse_root("a1+2a2").unwrap()), 0);
        let other = LieElement::root_vector(sc(Family::A, 2).cartan_type(), 0);
        assert!(c.bracket(&e1, &other).is_err());
    }

    #[test]
    fn jacobi_small_types() {
        for (f, l) in [
            (Family::A, 1),
            (Family::A, 3),
            (Family::B, 3),
            (Family::C, 3),
            (Family::D, 4),
            (Family::G, 2),
            (Family::F, 4),
        ] {
            sc(f, l);
        }
    }

    #[test]
    fn antisymmetry() {
        let c = sc(Family::F, 4);
        let m = c.root_system().num_roots();
        for a in 0..m {
            for b in 0..m {
                assert_eq!(c.n(a, b), -c.n(b, a));
            }
        }
    }
}
