//! Presented algebras with PBW-type normal forms `u^a g x^b`.
//!
//! Supported: twisted group algebras of `Z^s`, quantum affine spaces,
//! bosonizations whose x-relations are all quadratic, their cleft forms, and
//! crossed products of a quantum affine space with any of these.

mod build;
pub mod cogroupoid;
mod endo;

pub use build::{build_cleft, build_crossed, build_twisted_hopf, build_udlambda, DiagonalAction, QuantumAffine};
pub use endo::{certify_endomorphism, inner_conjugation, Certification, GradedEndomorphism};

use crate::datum::CocycleData;
use crate::lattice::{Character, GroupElement};
use crate::scalars::RF;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("unsupported family: {0}")]
    Unsupported(String),
    #[error("rewriting system is not confluent on the overlap {0}")]
    NotConfluent(String),
    #[error("action is not compatible with the relation {0}")]
    Action(String),
    #[error("malformed presentation: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    U(usize),
    G(GroupElement),
    X(usize),
}

pub type Word = Vec<Letter>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Group,
    QuantumAffine,
    Bosonization,
    Crossed,
}

/// `x_i x_j - chi^eff_j(g_i) x_j x_i = link * gbar_i gbar_j - constant` for `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct XRelation {
    pub link: RF,
    pub constant: RF,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Word, RF>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Vec::new())
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, RF::one())
    }

    pub fn term(w: Word, c: RF) -> Self {
        let mut e = Self::default();
        e.push(w, c);
        e
    }

    pub fn push(&mut self, w: Word, c: RF) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_insert_with(RF::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Word, RF> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.push(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&RF::from_int(-1)))
    }

    pub fn scale(&self, c: &RF) -> Self {
        let mut out = Self::default();
        for (w, v) in &self.terms {
            out.push(w.clone(), v * c);
        }
        out
    }

    /// Concatenation product of the underlying words, without reduction.
    pub fn concat(&self, o: &Self) -> Self {
        let mut out = Self::default();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let mut w = a.clone();
                w.extend(b.iter().cloned());
                out.push(w, x * y);
            }
        }
        out
    }

    /// `Some(c)` when the element is `c * w` for the given word.
    pub fn coefficient_if_multiple_of(&self, w: &Word) -> Option<RF> {
        match self.terms.len() {
            0 => Some(RF::zero()),
            1 => self.terms.get(w).cloned(),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub(crate) family: Family,
    pub(crate) params: Vec<String>,
    pub(crate) rank: usize,
    pub(crate) sigma: CocycleData,
    pub(crate) u_names: Vec<String>,
    /// `u_j u_i = u_comm[j][i] u_i u_j` for `j > i`.
    pub(crate) u_comm: Vec<Vec<RF>>,
    pub(crate) u_group: Vec<Character>,
    /// `x_k . u_i = sum_l u_xact[k][i][l] u_l`.
    pub(crate) u_xact: Vec<Vec<Vec<RF>>>,
    pub(crate) g: Vec<GroupElement>,
    pub(crate) chi_eff: Vec<Character>,
    pub(crate) linked: Vec<Vec<bool>>,
    pub(crate) xrel: BTreeMap<(usize, usize), XRelation>,
}

impl Presentation {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn u_count(&self) -> usize {
        self.u_names.len()
    }

    pub fn x_count(&self) -> usize {
        self.g.len()
    }

    pub fn sigma(&self) -> &CocycleData {
        &self.sigma
    }

    pub fn x_degree(&self, k: usize) -> &GroupElement {
        &self.g[k]
    }

    pub fn chi_eff(&self, k: usize) -> &Character {
        &self.chi_eff[k]
    }

    /// True when every pair of x-generators can be reordered by a quadratic rule.
    pub fn has_full_normal_forms(&self) -> bool {
        self.linked.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, l)| i == j || !l))
    }

    fn char_value(c: &Character, g: &GroupElement) -> RF {
        RF::from_exps(&c.eval_exps(g).expect("validated shapes"))
    }

    /// `gbar^-1 = sigma(g, -g)^-1 overline(-g)`.
    pub fn group_inverse(&self, g: &GroupElement) -> Element {
        let c = self.sigma.sigma(g, &g.neg()).inv().expect("monomial");
        Element::term(vec![Letter::G(g.neg())], c)
    }

    /// Result of rewriting the pair `(a, b)`, or `None` when it is already ordered.
    fn rewrite_pair(&self, a: &Letter, b: &Letter) -> Result<Option<Element>, AlgebraError> {
        use Letter::*;
        let out = match (a, b) {
            (U(j), U(i)) if j > i => Element::term(vec![U(*i), U(*j)], self.u_comm[*j][*i].clone()),
            (G(g), U(i)) => Element::term(vec![U(*i), G(g.clone())], Self::char_value(&self.u_group[*i], g)),
            (X(k), U(i)) => {
                let mut e = Element::term(vec![U(*i), X(*k)], Self::char_value(&self.u_group[*i], &self.g[*k]));
                for (l, c) in self.u_xact[*k][*i].iter().enumerate() {
                    e.push(vec![U(l)], c.clone());
                }
                e
            }
            (G(g), G(h)) => {
                let gh = g.add(h);
                let w = if gh.is_identity() { Vec::new() } else { vec![G(gh)] };
                Element::term(w, self.sigma.sigma(g, h))
            }
            (X(k), G(g)) => Element::term(vec![G(g.clone()), X(*k)], Self::char_value(&self.chi_eff[*k], g).inv().expect("monomial")),
            (X(j), X(i)) if j > i => {
                let (i, j) = (*i, *j);
                if self.linked[i][j] {
                    return Err(AlgebraError::Unsupported(format!(
                        "reordering x_{} x_{} needs the higher-degree relations of a component of rank at least 2",
                        j + 1,
                        i + 1
                    )));
                }
                let c_inv = Self::char_value(&self.chi_eff[j], &self.g[i]).inv().expect("monomial");
                let rel = self.xrel.get(&(i, j)).cloned().unwrap_or_default();
                let mut e = Element::word(vec![X(i), X(j)]);
                if !rel.link.is_zero() {
                    let gij = self.g[i].add(&self.g[j]);
                    let w = if gij.is_identity() { Vec::new() } else { vec![G(gij)] };
                    e.push(w, -&(&rel.link * &self.sigma.sigma(&self.g[i], &self.g[j])));
                }
                e.push(Vec::new(), rel.constant.clone());
                e.scale(&c_inv)
            }
            _ => return Ok(None),
        };
        Ok(Some(out))
    }

    fn find_redex(&self, w: &Word, strategy: Strategy) -> Result<Option<(usize, usize, Element)>, AlgebraError> {
        let n = w.len();
        let positions: Box<dyn Iterator<Item = usize>> = match strategy {
            Strategy::Leftmost => Box::new(0..n),
            Strategy::Rightmost => Box::new((0..n).rev()),
        };
        for p in positions {
            if let Letter::G(g) = &w[p] {
                if g.is_identity() {
                    return Ok(Some((p, 1, Element::one())));
                }
            }
            if p + 1 < n {
                if let Some(e) = self.rewrite_pair(&w[p], &w[p + 1])? {
                    return Ok(Some((p, 2, e)));
                }
            }
        }
        Ok(None)
    }

    pub fn reduce_with(&self, e: &Element, strategy: Strategy) -> Result<Element, AlgebraError> {
        let mut pending: BTreeMap<Word, RF> = e.terms.clone();
        let mut done = Element::zero();
        while let Some((w, c)) = pending.pop_first() {
            match self.find_redex(&w, strategy)? {
                None => done.push(w, c),
                Some((p, len, rep)) => {
                    for (mid, v) in rep.terms {
                        let mut nw = w[..p].to_vec();
                        nw.extend(mid);
                        nw.extend_from_slice(&w[p + len..]);
                        let coeff = &c * &v;
                        let slot = pending.entry(nw.clone()).or_insert_with(RF::zero);
                        *slot = &*slot + &coeff;
                        if slot.is_zero() {
                            pending.remove(&nw);
                        }
                    }
                }
            }
        }
        Ok(done)
    }

    pub fn normal_form(&self, e: &Element) -> Result<Element, AlgebraError> {
        self.reduce_with(e, Strategy::Leftmost)
    }

    pub fn normal_form_word(&self, w: Word) -> Result<Element, AlgebraError> {
        self.normal_form(&Element::word(w))
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        self.normal_form(&a.concat(b))
    }

    fn overlap_letters(&self) -> Vec<Letter> {
        let mut out: Vec<Letter> = (0..self.u_count()).map(Letter::U).collect();
        for j in 0..self.rank {
            let y = GroupElement::basis(self.rank, j);
            out.push(Letter::G(y.neg()));
            out.push(Letter::G(y));
        }
        out.extend((0..self.x_count()).map(Letter::X));
        out
    }

    /// Resolves every overlap `abc` with both `ab` and `bc` rewritable, applying
    /// the first rule on the left and on the right respectively.
    pub fn check_confluence(&self) -> Result<(), AlgebraError> {
        let letters = self.overlap_letters();
        for a in &letters {
            for b in &letters {
                let Some(ab) = self.rewrite_pair(a, b).or_else(skip_unsupported)? else { continue };
                for c in &letters {
                    let Some(bc) = self.rewrite_pair(b, c).or_else(skip_unsupported)? else { continue };
                    let left = ab.concat(&Element::word(vec![c.clone()]));
                    let right = Element::word(vec![a.clone()]).concat(&bc);
                    let (l, r) = match (self.normal_form(&left), self.normal_form(&right)) {
                        (Ok(l), Ok(r)) => (l, r),
                        (Err(AlgebraError::Unsupported(_)), _) | (_, Err(AlgebraError::Unsupported(_))) => continue,
                        (Err(e), _) | (_, Err(e)) => return Err(e),
                    };
                    if l != r {
                        let word = self.render_word(&[a.clone(), b.clone(), c.clone()]);
                        return Err(if matches!((a, c), (Letter::X(_) | Letter::G(_), Letter::U(_))) {
                            AlgebraError::Action(self.describe_overlap(a, b, c, &word))
                        } else {
                            AlgebraError::NotConfluent(word)
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn describe_overlap(&self, a: &Letter, b: &Letter, c: &Letter, word: &str) -> String {
        match (a, b) {
            (Letter::X(j), Letter::X(i)) => format!(
                "x_{} x_{} - c x_{} x_{} = ... acting on {} (overlap {word})",
                i + 1,
                j + 1,
                j + 1,
                i + 1,
                self.render_word(std::slice::from_ref(c))
            ),
            (Letter::X(k), Letter::G(_)) | (Letter::G(_), Letter::X(k)) => {
                format!("g x_{} = chi(g) x_{} g acting on {} (overlap {word})", k + 1, k + 1, self.render_word(std::slice::from_ref(c)))
            }
            (_, Letter::U(_)) => format!("module algebra condition on {} (overlap {word})", self.render_word(&[b.clone(), c.clone()])),
            _ => format!("overlap {word}"),
        }
    }

    pub fn render_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|l| match l {
                Letter::U(i) => self.u_names.get(*i).cloned().unwrap_or_else(|| format!("u{}", i + 1)),
                Letter::G(g) => format!("[{}]", g.render("y")),
                Letter::X(k) => format!("x{}", k + 1),
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn render(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".into();
        }
        e.terms
            .iter()
            .map(|(w, c)| {
                if c.is_one() {
                    self.render_word(w)
                } else if w.is_empty() {
                    format!("({})", c.render(&self.params))
                } else {
                    format!("({})*{}", c.render(&self.params), self.render_word(w))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn skip_unsupported(e: AlgebraError) -> Result<Option<Element>, AlgebraError> {
    match e {
        AlgebraError::Unsupported(_) => Ok(None),
        other => Err(other),
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::U(i) => write!(f, "u{}", i + 1),
            Letter::G(g) => write!(f, "[{}]", g.render("y")),
            Letter::X(k) => write!(f, "x{}", k + 1),
        }
    }
}
