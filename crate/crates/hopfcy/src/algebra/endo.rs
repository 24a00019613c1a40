use super::{AlgebraError, Element, Letter, Presentation};
use crate::lattice::{Character, GroupElement};
use crate::scalars::RF;
use serde::Serialize;

/// Diagonal map `u_i -> u[i] u_i`, `x_k -> x[k] x_k`, `gbar -> group(g) gbar`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedEndomorphism {
    pub u: Vec<RF>,
    pub x: Vec<RF>,
    pub group: Character,
}

impl GradedEndomorphism {
    pub fn identity(u: usize, x: usize, s: usize, m: usize) -> Self {
        Self { u: vec![RF::one(); u], x: vec![RF::one(); x], group: Character::trivial(s, m) }
    }

    pub fn identity_on(p: &Presentation) -> Self {
        Self::identity(p.u_count(), p.x_count(), p.rank(), p.params().len())
    }

    pub fn compose(&self, o: &Self) -> Self {
        Self {
            u: self.u.iter().zip(&o.u).map(|(a, b)| a * b).collect(),
            x: self.x.iter().zip(&o.x).map(|(a, b)| a * b).collect(),
            group: self.group.mul(&o.group).expect("same shape"),
        }
    }

    pub fn group_scalar(&self, g: &GroupElement) -> RF {
        RF::from_exps(&self.group.eval_exps(g).expect("same rank"))
    }

    pub fn word_scalar(&self, w: &[Letter]) -> RF {
        let mut c = RF::one();
        for l in w {
            let f = match l {
                Letter::U(i) => self.u[*i].clone(),
                Letter::X(k) => self.x[*k].clone(),
                Letter::G(g) => self.group_scalar(g),
            };
            c = &c * &f;
        }
        c
    }

    pub fn apply(&self, e: &Element) -> Element {
        let mut out = Element::zero();
        for (w, c) in e.terms() {
            out.push(w.clone(), c * &self.word_scalar(w));
        }
        out
    }

    /// Generator-by-generator description for reports.
    pub fn describe(&self, p: &Presentation) -> Vec<(String, String)> {
        let names = p.params();
        let mut out = Vec::new();
        for (i, c) in self.u.iter().enumerate() {
            let n = p.render_word(&[Letter::U(i)]);
            out.push((n.clone(), scaled(c, &n, names)));
        }
        for j in 0..self.group.rank() {
            let n = format!("y{}", j + 1);
            out.push((n.clone(), scaled(&self.group_scalar(&GroupElement::basis(self.group.rank(), j)), &n, names)));
        }
        for (k, c) in self.x.iter().enumerate() {
            let n = format!("x{}", k + 1);
            out.push((n.clone(), scaled(c, &n, names)));
        }
        out
    }
}

fn scaled(c: &RF, gen: &str, names: &[String]) -> String {
    if c.is_one() {
        gen.to_string()
    } else {
        format!("({})*{}", c.render(names), gen)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certification {
    pub certified: bool,
    pub failing_relation: Option<String>,
    pub relations_checked: usize,
    /// Relations of degree above two preserved because the map is diagonal and they are multi-homogeneous.
    pub structural: Vec<String>,
}

impl Presentation {
    /// Defining relations as elements that vanish in the algebra, with labels.
    pub fn defining_relations(&self) -> Vec<(String, Element)> {
        use Letter::*;
        let mut out = Vec::new();
        let w = |v: Vec<Letter>| Element::word(v);
        let gval = |c: &Character, g: &GroupElement| RF::from_exps(&c.eval_exps(g).expect("shape"));
        let basis: Vec<GroupElement> = (0..self.rank).map(|j| GroupElement::basis(self.rank, j)).collect();
        let signed: Vec<GroupElement> = basis.iter().flat_map(|y| [y.clone(), y.neg()]).collect();
        for j in 0..self.u_count() {
            for i in 0..j {
                let r = w(vec![U(j), U(i)]).sub(&Element::term(vec![U(i), U(j)], self.u_comm[j][i].clone()));
                out.push((format!("{} {} = c {} {}", self.u_names[j], self.u_names[i], self.u_names[i], self.u_names[j]), r));
            }
        }
        for i in 0..self.u_count() {
            for y in &basis {
                let r = w(vec![G(y.clone()), U(i)]).sub(&Element::term(vec![U(i), G(y.clone())], gval(&self.u_group[i], y)));
                out.push((format!("[{}] {} = (g.{}) [{}]", y.render("y"), self.u_names[i], self.u_names[i], y.render("y")), r));
            }
            for k in 0..self.x_count() {
                let mut r = w(vec![X(k), U(i)]).sub(&Element::term(vec![U(i), X(k)], gval(&self.u_group[i], &self.g[k])));
                for (l, c) in self.u_xact[k][i].iter().enumerate() {
                    r.push(vec![U(l)], -c);
                }
                out.push((
                    format!(
                        "x{} {} = (x{}.{}) + (g{}.{}) x{}",
                        k + 1,
                        self.u_names[i],
                        k + 1,
                        self.u_names[i],
                        k + 1,
                        self.u_names[i],
                        k + 1
                    ),
                    r,
                ));
            }
        }
        for g in &signed {
            for h in &signed {
                let gh = g.add(h);
                let target = if gh.is_identity() { Vec::new() } else { vec![G(gh)] };
                let r = w(vec![G(g.clone()), G(h.clone())]).sub(&Element::term(target, self.sigma.sigma(g, h)));
                out.push((format!("[{}][{}] = sigma [{}]", g.render("y"), h.render("y"), g.add(h).render("y")), r));
            }
        }
        for k in 0..self.x_count() {
            for y in &basis {
                let r = w(vec![G(y.clone()), X(k)]).sub(&Element::term(vec![X(k), G(y.clone())], gval(&self.chi_eff[k], y)));
                out.push((format!("[{}] x{} = chi_{}({}) x{} [{}]", y.render("y"), k + 1, k + 1, y.render("y"), k + 1, y.render("y")), r));
            }
        }
        for i in 0..self.x_count() {
            for j in i + 1..self.x_count() {
                if self.linked[i][j] {
                    continue;
                }
                let c = gval(&self.chi_eff[j], &self.g[i]);
                let mut r = w(vec![X(i), X(j)]).sub(&Element::term(vec![X(j), X(i)], c));
                if let Some(rel) = self.xrel.get(&(i, j)) {
                    let gij = self.g[i].add(&self.g[j]);
                    let target = if gij.is_identity() { Vec::new() } else { vec![G(gij)] };
                    r.push(target, -&(&rel.link * &self.sigma.sigma(&self.g[i], &self.g[j])));
                    r.push(Vec::new(), rel.constant.clone());
                }
                out.push((format!("x{} x{} - c x{} x{} = linking terms", i + 1, j + 1, j + 1, i + 1), r));
            }
        }
        out
    }

    fn serre_labels(&self) -> Vec<String> {
        let n = self.x_count();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.linked[i][j] {
                    out.push(format!("(ad x{})^(1-a_{}{})(x{}) = 0", i + 1, i + 1, j + 1, j + 1));
                }
            }
        }
        out
    }
}

pub fn certify_endomorphism(p: &Presentation, phi: &GradedEndomorphism) -> Result<Certification, AlgebraError> {
    if phi.u.len() != p.u_count() || phi.x.len() != p.x_count() || phi.group.rank() != p.rank() {
        return Err(AlgebraError::Malformed("endomorphism shape does not match the presentation".into()));
    }
    let rels = p.defining_relations();
    let n = rels.len();
    for (label, r) in rels {
        if !p.normal_form(&phi.apply(&r))?.is_zero() {
            return Ok(Certification { certified: false, failing_relation: Some(label), relations_checked: n, structural: Vec::new() });
        }
    }
    Ok(Certification { certified: true, failing_relation: None, relations_checked: n, structural: p.serre_labels() })
}

/// `Ad(hbar): a -> hbar a hbar^-1`, read off generator by generator.
pub fn inner_conjugation(p: &Presentation, h: &GroupElement) -> Result<GradedEndomorphism, AlgebraError> {
    let hb = Element::word(vec![Letter::G(h.clone())]);
    let hinv = p.group_inverse(h);
    let conj = |l: Letter| -> Result<RF, AlgebraError> {
        let e = p.mul(&p.mul(&hb, &Element::word(vec![l.clone()]))?, &hinv)?;
        e.coefficient_if_multiple_of(&vec![l.clone()])
            .ok_or_else(|| AlgebraError::Unsupported(format!("conjugate of {l} is not a multiple of it")))
    };
    let u = (0..p.u_count()).map(|i| conj(Letter::U(i))).collect::<Result<Vec<_>, _>>()?;
    let x = (0..p.x_count()).map(|k| conj(Letter::X(k))).collect::<Result<Vec<_>, _>>()?;
    let m = p.params().len();
    let mut rows = Vec::new();
    for j in 0..p.rank() {
        let c = conj(Letter::G(GroupElement::basis(p.rank(), j)))?;
        let exps =
            c.as_unit_exps(m).ok_or_else(|| AlgebraError::Unsupported("group conjugation scalar is not a parameter monomial".into()))?;
        rows.push(exps);
    }
    let group = Character::new(rows, m).map_err(|e| AlgebraError::Malformed(e.to_string()))?;
    Ok(GradedEndomorphism { u, x, group })
}
