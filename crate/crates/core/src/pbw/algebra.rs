use std::sync::Arc;

use crate::chevalley::{LieElement, StructureConstants};
use crate::error::{Error, Result};
use crate::rootsys::{CartanType, ConvexOrder, RootSystem};

use super::monomial::{Layout, Letter, Monomial};
use super::ring::Integers;
use super::straighten::Backend;

/// The ℤ-form of the enveloping algebra for one root system and one convex
/// order. Holds the structure constants and the integer straightening cache
/// that every coefficient ring reduces from.
#[derive(Debug)]
pub struct Algebra {
    rs: Arc<RootSystem>,
    sc: Arc<StructureConstants>,
    order: ConvexOrder,
    layout: Layout,
    pub(crate) integer: Arc<Backend<Integers>>,
}

impl Algebra {
    pub fn new(cartan_type: CartanType, word: Option<&[usize]>) -> Result<Arc<Algebra>> {
        let rs = Arc::new(RootSystem::build(cartan_type)?);
        let sc = Arc::new(StructureConstants::new(rs.clone())?);
        Algebra::from_parts(sc, word)
    }

    pub fn from_parts(sc: Arc<StructureConstants>, word: Option<&[usize]>) -> Result<Arc<Algebra>> {
        let rs = sc.root_system().clone();
        let order = rs.convex_order(word)?;
        let layout = Layout { nu: rs.num_positive(), l: rs.rank() };
        Ok(Arc::new(Algebra { rs, sc, order, layout, integer: Arc::new(Backend::integers()) }))
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn constants(&self) -> &Arc<StructureConstants> {
        &self.sc
    }

    pub fn order(&self) -> &ConvexOrder {
        &self.order
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn cartan_type(&self) -> CartanType {
        self.rs.cartan_type()
    }

    pub fn same_as(&self, other: &Algebra) -> bool {
        std::ptr::eq(self, other)
            || (self.cartan_type() == other.cartan_type() && self.order.word() == other.order.word())
    }

    pub(crate) fn check_same(&self, other: &Algebra) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::Mismatch(format!(
                "{} with word {:?} against {} with word {:?}",
                self.cartan_type(),
                self.order.word(),
                other.cartan_type(),
                other.order.word()
            )))
        }
    }

    /// Position of the simple root `α_i` in the convex order.
    pub fn simple_position(&self, i: usize) -> usize {
        self.order.position(self.rs.simple(i))
    }

    /// Root id of the factor at position `k` (positive root `β_{k+1}`).
    pub fn root_at(&self, k: usize) -> usize {
        self.order.root_at(k)
    }

    /// The factor `e_γ^(n)` for any root id `γ`.
    pub fn letter(&self, id: usize, n: u16) -> Letter {
        let k = self.order.position(self.rs.abs(id)) as u16;
        if self.rs.is_positive(id) {
            Letter::E(k, n)
        } else {
            Letter::F(k, n)
        }
    }

    /// Root id of a root-vector factor.
    pub fn letter_root(&self, x: Letter) -> Option<usize> {
        match x {
            Letter::E(k, _) => Some(self.root_at(k as usize)),
            Letter::F(k, _) => Some(self.rs.neg(self.root_at(k as usize))),
            Letter::H(..) => None,
        }
    }

    pub fn monomial_of_root(&self, id: usize, n: u16) -> Monomial {
        Monomial::from_letter(self.layout, self.letter(id, n))
    }

    /// Weight `Σ e_k β_k − Σ f_k β_k` in simple-root coordinates.
    pub fn weight_of(&self, m: &Monomial) -> Vec<i32> {
        let mut w = vec![0i32; self.layout.l];
        let (f, e) = (m.f(self.layout), m.e(self.layout));
        for k in 0..self.layout.nu {
            let d = e[k] as i32 - f[k] as i32;
            if d != 0 {
                let c = &self.rs.root(self.root_at(k)).coords;
                for i in 0..self.layout.l {
                    w[i] += d * c[i];
                }
            }
        }
        w
    }

    /// `⟨wt(E), α_i^∨⟩` for the positive part `E` of a monomial.
    pub(crate) fn e_pairing(&self, m: &Monomial, i: usize) -> i64 {
        let e = m.e(self.layout);
        let mut s = 0i64;
        for (k, &n) in e.iter().enumerate() {
            if n > 0 {
                s += n as i64 * self.rs.pairing(self.root_at(k), i) as i64;
            }
        }
        s
    }

    /// Factors of a Lie algebra element, each with exponent 1.
    pub(crate) fn lie_letters(&self, z: &LieElement) -> Vec<(Letter, i64)> {
        let mut out: Vec<(Letter, i64)> = z.e.iter().map(|(&id, &c)| (self.letter(id, 1), c)).collect();
        for (i, &c) in z.h.iter().enumerate() {
            if c != 0 {
                out.push((Letter::H(i as u16, 1), c));
            }
        }
        out
    }
}
