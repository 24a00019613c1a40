use super::{AlgebraError, Family, Presentation, XRelation};
use crate::datum::{deform_datum, CleftDatum, CocycleData, GenericDatum, HCocycle};
use crate::expr::WordPoly;
use crate::lattice::Character;
use crate::scalars::RF;
use std::collections::BTreeMap;

/// `k<u_1..u_n | u_j u_i = c_ji u_i u_j, j > i>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumAffine {
    pub names: Vec<String>,
    comm: Vec<Vec<RF>>,
}

impl QuantumAffine {
    /// `comm[j][i]` is read for `j > i` only.
    pub fn new(names: Vec<String>, comm: Vec<Vec<RF>>) -> Result<Self, AlgebraError> {
        let n = names.len();
        if comm.len() != n || comm.iter().any(|r| r.len() != n) {
            return Err(AlgebraError::Malformed("commutation table must be n x n".into()));
        }
        for j in 0..n {
            for i in 0..j {
                if comm[j][i].is_zero() {
                    return Err(AlgebraError::Malformed(format!("zero commutation scalar for ({}, {})", names[j], names[i])));
                }
            }
        }
        Ok(Self { names, comm })
    }

    /// `u_j u_i = c u_i u_j` for every `j > i`.
    pub fn uniform(names: Vec<String>, c: RF) -> Self {
        let n = names.len();
        Self { names, comm: vec![vec![c; n]; n] }
    }

    /// Reads relations of the form `a u_i u_j + b u_j u_i`, one per unordered pair.
    pub fn from_relations(names: Vec<String>, rels: &[WordPoly]) -> Result<Self, AlgebraError> {
        let n = names.len();
        let mut comm: Vec<Vec<Option<RF>>> = vec![vec![None; n]; n];
        for r in rels {
            let t: Vec<_> = r.terms().iter().collect();
            let bad = || AlgebraError::Unsupported("algebra relations must be q-commutation relations a*u_i*u_j + b*u_j*u_i".into());
            if t.len() != 2 || t.iter().any(|(w, _)| w.len() != 2) {
                return Err(bad());
            }
            let (w0, c0) = t[0];
            let (w1, c1) = t[1];
            if w0[0] != w1[1] || w0[1] != w1[0] || w0[0] == w0[1] {
                return Err(bad());
            }
            // keys are sorted, so w0 = [i, j] with i < j
            let (i, j) = (w0[0], w0[1]);
            if comm[j][i].is_some() {
                return Err(AlgebraError::Malformed(format!("two relations for the pair ({}, {})", names[i], names[j])));
            }
            comm[j][i] = Some(-&(c0 * &c1.inv().map_err(|_| bad())?));
        }
        let mut out = vec![vec![RF::one(); n]; n];
        for j in 0..n {
            for i in 0..j {
                out[j][i] = comm[j][i]
                    .clone()
                    .ok_or_else(|| AlgebraError::Malformed(format!("no relation for the pair ({}, {})", names[i], names[j])))?;
            }
        }
        Self::new(names, out)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Scalar `c` with `u_j u_i = c u_i u_j`, for `j > i`.
    pub fn commutation(&self, j: usize, i: usize) -> &RF {
        &self.comm[j][i]
    }

    /// Relation space `{u_j u_i - c_ji u_i u_j}`.
    pub fn relations(&self) -> Vec<WordPoly> {
        let mut out = Vec::new();
        for j in 0..self.len() {
            for i in 0..j {
                let mut r = WordPoly::word(vec![j, i]);
                r.push(vec![i, j], -&self.comm[j][i]);
                out.push(r);
            }
        }
        out
    }
}

/// Diagonal group action on the generators of a quantum affine space together
/// with linear actions of the skew-primitives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalAction {
    /// `g . u_i = group[i](g) u_i`.
    pub group: Vec<Character>,
    /// `x_k . u_i = sum_l x[k][i][l] u_l`.
    pub x: Vec<Vec<Vec<RF>>>,
}

impl DiagonalAction {
    pub fn group_only(group: Vec<Character>) -> Self {
        Self { group, x: Vec::new() }
    }
}

fn base_presentation(d: &GenericDatum, sigma: CocycleData, chi_eff: Vec<Character>) -> Presentation {
    let n = d.theta();
    Presentation {
        family: if n == 0 { Family::Group } else { Family::Bosonization },
        params: d.params().to_vec(),
        rank: d.rank(),
        sigma,
        u_names: Vec::new(),
        u_comm: Vec::new(),
        u_group: Vec::new(),
        u_xact: Vec::new(),
        g: (0..n).map(|i| d.g(i).clone()).collect(),
        chi_eff,
        linked: (0..n).map(|i| (0..n).map(|j| i != j && d.cartan().linked(i, j)).collect()).collect(),
        xrel: BTreeMap::new(),
    }
}

/// `g x_i = chi_i(g) x_i g` and `x_i x_j - q_ij x_j x_i = lambda_ij (g_i g_j - 1)`.
pub fn build_udlambda(d: &GenericDatum) -> Result<Presentation, AlgebraError> {
    let mut p = base_presentation(d, CocycleData::trivial(d.rank(), d.param_count()), d.chars().to_vec());
    for (&(i, j), l) in d.linking() {
        p.xrel.insert((i, j), XRelation { link: l.clone(), constant: l.clone() });
    }
    p.check_confluence()?;
    Ok(p)
}

/// Twisted group part `gbar hbar = sigma(g, h) overline(gh)`, braiding by the deformed
/// characters and `x_i x_j - q^sigma_ij x_j x_i = lambda_ij gbar_i gbar_j - pi_ij`.
pub fn build_cleft(cd: &CleftDatum) -> Result<Presentation, AlgebraError> {
    let d = &cd.base;
    let def = deform_datum(d, &cd.sigma);
    let mut p = base_presentation(d, cd.sigma.clone(), def.chi);
    for (i, j) in d.unlinked_pairs() {
        let rel = XRelation { link: d.linking_value(i, j), constant: cd.pi_value(i, j) };
        if !rel.link.is_zero() || !rel.constant.is_zero() {
            p.xrel.insert((i, j), rel);
        }
    }
    p.check_confluence()?;
    Ok(p)
}

/// The one-sided twist of `U(D, lambda)` by a cocycle of the form group part plus
/// values on pairs of skew-primitives, computed from `h . k = tau(h_1, k_1) h_2 k_2`.
pub fn build_twisted_hopf(d: &GenericDatum, tau: &HCocycle) -> Result<Presentation, AlgebraError> {
    let def = deform_datum(d, &tau.group);
    let mut p = base_presentation(d, tau.group.clone(), def.chi.clone());
    for &(i, j) in tau.xx.keys() {
        if i == j || d.cartan().linked(i, j) {
            return Err(AlgebraError::Unsupported(format!("cocycle value on (x_{}, x_{}) within one component", i + 1, j + 1)));
        }
    }
    for (i, j) in d.unlinked_pairs() {
        let lam = d.linking_value(i, j);
        let q_sigma = RF::from_exps(&def.q[i][j]);
        let constant = &(&(&lam * &tau.group.sigma(d.g(i), d.g(j))) - &tau.xx_value(i, j)) + &(&q_sigma * &tau.xx_value(j, i));
        let rel = XRelation { link: lam, constant };
        if !rel.link.is_zero() || !rel.constant.is_zero() {
            p.xrel.insert((i, j), rel);
        }
    }
    p.check_confluence()?;
    Ok(p)
}

/// Adjoins a quantum affine space acted on by the Hopf part, with
/// `gbar u = (g . u) gbar` and `x u = (x . u) + (g_x . u) x`.
pub fn build_crossed(a: &QuantumAffine, action: &DiagonalAction, h: &Presentation) -> Result<Presentation, AlgebraError> {
    let n = a.len();
    if action.group.len() != n {
        return Err(AlgebraError::Malformed(format!("group action given on {} generators, algebra has {n}", action.group.len())));
    }
    if action.group.iter().any(|c| c.rank() != h.rank || c.params() != h.params.len()) {
        return Err(AlgebraError::Malformed("group action character has the wrong shape".into()));
    }
    let mut x = action.x.clone();
    if x.is_empty() {
        x = vec![vec![vec![RF::zero(); n]; n]; h.x_count()];
    }
    if x.len() != h.x_count() || x.iter().any(|m| m.len() != n || m.iter().any(|r| r.len() != n)) {
        return Err(AlgebraError::Malformed("skew-primitive action matrices have the wrong shape".into()));
    }
    let mut p = h.clone();
    p.family = if h.rank == 0 && h.x_count() == 0 { Family::QuantumAffine } else { Family::Crossed };
    p.u_names = a.names.clone();
    p.u_comm = a.comm.clone();
    p.u_group = action.group.clone();
    p.u_xact = x;
    p.check_confluence()?;
    Ok(p)
}
