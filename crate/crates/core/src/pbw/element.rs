use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::Value;

use crate::error::{Error, Result};

use super::algebra::Algebra;
use super::monomial::{Letter, Monomial};
use super::ring::{Integers, PrimeField, Ring};
use super::straighten::{mul_monomials_into, rmul_into, Acc, Backend};

/// A finite linear combination of PBW monomials.
#[derive(Clone, Debug)]
pub struct Element<R: Ring> {
    alg: Arc<Algebra>,
    ring: R,
    terms: BTreeMap<Monomial, R::Elem>,
}

impl<R: Ring> PartialEq for Element<R> {
    fn eq(&self, other: &Self) -> bool {
        self.alg.same_as(&other.alg) && self.ring == other.ring && self.terms == other.terms
    }
}

impl<R: Ring> Element<R> {
    pub fn zero(alg: &Arc<Algebra>, ring: R) -> Element<R> {
        Element { alg: alg.clone(), ring, terms: BTreeMap::new() }
    }

    pub fn one(alg: &Arc<Algebra>, ring: R) -> Element<R> {
        Element::monomial(alg, ring.clone(), Monomial::one(alg.layout()), ring.one())
    }

    pub fn monomial(alg: &Arc<Algebra>, ring: R, m: Monomial, c: R::Elem) -> Element<R> {
        let mut x = Element::zero(alg, ring);
        x.add_term(m, c);
        x
    }

    /// `e_γ^(n)` for a root id `γ` (negative ids give `f`'s).
    pub fn root_power(alg: &Arc<Algebra>, ring: R, id: usize, n: u16) -> Element<R> {
        let c = ring.one();
        Element::monomial(alg, ring, alg.monomial_of_root(id, n), c)
    }

    /// `(h_i choose n)`.
    pub fn torus(alg: &Arc<Algebra>, ring: R, i: usize, n: u16) -> Element<R> {
        let c = ring.one();
        Element::monomial(alg, ring, Monomial::from_letter(alg.layout(), Letter::H(i as u16, n)), c)
    }

    pub fn from_terms(alg: &Arc<Algebra>, ring: R, terms: impl IntoIterator<Item = (Monomial, R::Elem)>) -> Element<R> {
        let mut x = Element::zero(alg, ring);
        for (m, c) in terms {
            x.add_term(m, c);
        }
        x
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, R::Elem> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> R::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: R::Elem) {
        assert_eq!(m.0.len(), self.alg.layout().len(), "monomial of the wrong shape");
        if self.ring.is_zero(&c) {
            return;
        }
        let ring = &self.ring;
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = ring.add(v, &c);
                if ring.is_zero(v) {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn check(&self, other: &Element<R>) -> Result<()> {
        self.alg.check_same(&other.alg)?;
        if self.ring != other.ring {
            return Err(Error::Mismatch(format!("{} against {}", self.ring.name(), other.ring.name())));
        }
        Ok(())
    }

    pub fn add(&self, other: &Element<R>) -> Result<Element<R>> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element<R>) -> Result<Element<R>> {
        self.add(&other.scale(&self.ring.from_i64(-1)))
    }

    pub fn scale(&self, c: &R::Elem) -> Element<R> {
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), self.ring.mul(v, c)));
        Element::from_terms(&self.alg, self.ring.clone(), terms)
    }

    /// Weights of the monomials in the support, each listed once.
    pub fn weights(&self) -> Vec<Vec<i32>> {
        let mut ws: Vec<Vec<i32>> = self.terms.keys().map(|m| self.alg.weight_of(m)).collect();
        ws.sort();
        ws.dedup();
        ws
    }

    /// JSON array of `[monomial, coefficient]` string pairs in canonical order.
    pub fn to_json(&self) -> Value {
        let layout = self.alg.layout();
        Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| Value::Array(vec![Value::String(m.to_text(layout)), Value::String(self.ring.format(c))]))
                .collect(),
        )
    }

    pub fn from_json(alg: &Arc<Algebra>, ring: R, v: &Value) -> Result<Element<R>> {
        let bad = || Error::Parse("expected an array of [monomial, coefficient] pairs".into());
        let mut x = Element::zero(alg, ring.clone());
        for item in v.as_array().ok_or_else(bad)? {
            let pair = item.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
            let m = Monomial::parse(alg.layout(), pair[0].as_str().ok_or_else(bad)?)?;
            let c = ring.parse(pair[1].as_str().ok_or_else(bad)?)?;
            x.add_term(m, c);
        }
        Ok(x)
    }

    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let layout = self.alg.layout();
        self.terms
            .iter()
            .map(|(m, c)| format!("{} {}", self.ring.format(c), m.to_text(layout)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl Element<Integers> {
    pub fn reduce_mod_p(&self, field: PrimeField) -> Element<PrimeField> {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), field.from_bigint(c)));
        Element::from_terms(&self.alg, field, terms)
    }
}

impl Element<PrimeField> {
    /// The Frobenius endomorphism: divides every index by `p`, killing
    /// monomials with an index not divisible by `p`.
    pub fn frobenius(&self) -> Element<PrimeField> {
        let p = self.ring.p() as u16;
        let terms = self.terms.iter().filter(|(m, _)| m.0.iter().all(|&x| x % p == 0)).map(|(m, c)| {
            let m = Monomial(m.0.iter().map(|&x| x / p).collect());
            (m, *c)
        });
        Element::from_terms(&self.alg, self.ring, terms)
    }
}

/// Multiplication in the ℤ-form or one of its scalar extensions.
pub struct Engine<R: Ring> {
    alg: Arc<Algebra>,
    backend: Arc<Backend<R>>,
}

impl Engine<Integers> {
    /// The integer engine shares its caches with the algebra.
    pub fn integers(alg: &Arc<Algebra>) -> Engine<Integers> {
        Engine { alg: alg.clone(), backend: alg.integer.clone() }
    }
}

impl<R: Ring> Engine<R> {
    pub fn new(alg: &Arc<Algebra>, ring: R) -> Engine<R> {
        Engine { alg: alg.clone(), backend: Arc::new(Backend::reduced(ring)) }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn ring(&self) -> &R {
        &self.backend.ring
    }

    pub fn multiply(&self, x: &Element<R>, y: &Element<R>) -> Result<Element<R>> {
        for z in [x, y] {
            self.alg.check_same(&z.alg)?;
            if z.ring != self.backend.ring {
                return Err(Error::Mismatch(format!("{} element in a {} engine", z.ring.name(), self.ring().name())));
            }
        }
        let ring = &self.backend.ring;
        let mut acc = Acc::new(ring);
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                mul_monomials_into(&self.alg, &self.backend, a, b, &ring.mul(ca, cb), &mut acc);
            }
        }
        Ok(Element::from_terms(&self.alg, ring.clone(), acc.finish()))
    }

    pub fn product(&self, factors: &[Element<R>]) -> Result<Element<R>> {
        let mut out = Element::one(&self.alg, self.ring().clone());
        for f in factors {
            out = self.multiply(&out, f)?;
        }
        Ok(out)
    }

    /// `a · b` for two monomials, as a list of terms in arbitrary order.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Vec<(Monomial, R::Elem)> {
        let ring = &self.backend.ring;
        let mut acc = Acc::new(ring);
        mul_monomials_into(&self.alg, &self.backend, a, b, &ring.one(), &mut acc);
        acc.finish()
    }

    /// `m · x` for a single factor.
    pub fn rmul_letter(&self, m: &Monomial, x: Letter) -> Vec<(Monomial, R::Elem)> {
        let ring = &self.backend.ring;
        let mut acc = Acc::new(ring);
        rmul_into(&self.alg, &self.backend, m, x, &ring.one(), &mut acc);
        acc.finish()
    }

    /// Drops the product memo; pair expansions are kept.
    pub fn clear_memo(&self) {
        self.backend.clear_memo();
    }
}

/// Integer-valued convenience for tests and reports.
pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}
