//! Equivariant minimality, lattice-level MMP reduction and rationality verdicts.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::{blowdown, DivisorClass, PicardLattice};
use crate::weyl::{
    self, generate_weyl, invariant_rank, iota_support, named_element, orbits_on_curves,
    ActionGroup, CurveRepresentation, LatticeAutomorphism,
};

/// A lattice with the combined group `H` (geometric action and Galois) and the geometric part `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantSurface {
    pub lattice: PicardLattice,
    pub group: ActionGroup,
    pub g_subgroup: ActionGroup,
    pub has_rational_point: bool,
}

impl EquivariantSurface {
    pub fn new(
        group: ActionGroup,
        g_subgroup: ActionGroup,
        has_rational_point: bool,
    ) -> Result<Self> {
        if group.lattice != g_subgroup.lattice {
            return Err(Error::Unsupported(
                "groups act on different lattices".into(),
            ));
        }
        if !g_subgroup.is_subgroup_of(&group) {
            return Err(Error::Unsupported("G is not contained in H".into()));
        }
        Ok(EquivariantSurface {
            lattice: group.lattice.clone(),
            group,
            g_subgroup,
            has_rational_point,
        })
    }

    /// Surface where `H = G`.
    pub fn with_group(group: ActionGroup, has_rational_point: bool) -> Self {
        EquivariantSurface {
            lattice: group.lattice.clone(),
            g_subgroup: group.clone(),
            group,
            has_rational_point,
        }
    }

    pub fn k2(&self) -> i64 {
        self.lattice.degree()
    }

    pub fn rho_h(&self) -> usize {
        invariant_rank(&self.group)
    }

    pub fn rho_g(&self) -> usize {
        invariant_rank(&self.g_subgroup)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minimality {
    pub minimal: bool,
    /// The orbit that `mmp_reduce` would contract next.
    pub witness: Option<Vec<DivisorClass>>,
    /// Every orbit of pairwise disjoint `(-1)`-curves.
    pub contractible: Vec<Vec<DivisorClass>>,
}

fn choose(contractible: &[Vec<DivisorClass>]) -> Option<Vec<DivisorClass>> {
    contractible
        .iter()
        .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
        .cloned()
}

pub fn is_minimal(s: &EquivariantSurface) -> Minimality {
    let curves = s.lattice.enumerate_minus_one_curves();
    let contractible: Vec<Vec<DivisorClass>> = orbits_on_curves(&s.group, &curves)
        .into_iter()
        .filter(|o| o.disjoint)
        .map(|o| o.curves)
        .collect();
    Minimality {
        minimal: contractible.is_empty(),
        witness: choose(&contractible),
        contractible,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    /// Contracted orbit, in coordinates of the lattice before the step.
    pub orbit: Vec<DivisorClass>,
    pub names: Vec<String>,
    pub k2_before: i64,
    pub k2_after: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub final_surface: EquivariantSurface,
}

fn transport(
    group: &ActionGroup,
    lat: &PicardLattice,
    pf: &crate::lattice::Pushforward,
) -> Result<ActionGroup> {
    let mut els: BTreeSet<LatticeAutomorphism> = BTreeSet::new();
    for g in &group.elements {
        els.insert(LatticeAutomorphism {
            matrix: pf.transport(&g.matrix),
        });
    }
    let els: Vec<LatticeAutomorphism> = els.into_iter().collect();
    ActionGroup::generate(lat, &els, group.generator_words.clone())
}

/// Contracts the smallest contractible orbit until the surface is minimal.
pub fn mmp_reduce(s: &EquivariantSurface) -> Result<ReductionTrace> {
    let mut cur = s.clone();
    let mut steps = Vec::new();
    loop {
        let m = is_minimal(&cur);
        let Some(orbit) = m.witness else { break };
        if orbit.len() >= cur.lattice.rank {
            break;
        }
        let (lat, pf) = blowdown(&cur.lattice, &orbit)?;
        let group = transport(&cur.group, &lat, &pf)?;
        let g_subgroup = transport(&cur.g_subgroup, &lat, &pf)?;
        steps.push(ReductionStep {
            names: orbit.iter().map(|c| cur.lattice.name(c)).collect(),
            orbit,
            k2_before: cur.k2(),
            k2_after: lat.degree(),
        });
        cur = EquivariantSurface {
            lattice: lat,
            group,
            g_subgroup,
            has_rational_point: cur.has_rational_point,
        };
    }
    Ok(ReductionTrace {
        steps,
        final_surface: cur,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriteriaFlags {
    pub minimal: bool,
    pub k2: i64,
    pub rho_g: usize,
    pub iskovskikh_rational: bool,
    pub toric_form: bool,
    pub piccrit_rational: bool,
}

pub fn rationality_criteria(s: &EquivariantSurface) -> CriteriaFlags {
    let minimal = is_minimal(s).minimal;
    let k2 = s.k2();
    let rho_g = s.rho_g();
    CriteriaFlags {
        minimal,
        k2,
        rho_g,
        iskovskikh_rational: minimal && k2 >= 5 && s.has_rational_point,
        toric_form: minimal && k2 >= 6,
        piccrit_rational: rho_g as i64 + k2 >= 7 && s.has_rational_point,
    }
}

/// Minimality of a conic bundle with `rho^G = 2` and the given `K^2`; `None` when no rule applies.
///
/// `K^2` in `{3, 5, 6, 7, 8}` is never minimal except for `F_n` type surfaces with `K^2 = 8`.
pub fn conic_bundle_minimality(k2: i64, is_ruled_surface: bool) -> Option<bool> {
    match k2 {
        8 if is_ruled_surface => Some(true),
        3 | 5 | 6 | 7 | 8 => Some(false),
        k if k <= 0 => Some(true),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Rational { route: String },
    ExceptionalCase(String),
    OutOfScope(String),
}

/// Holds `W(D_5)` with its action on the sixteen lines and the four exceptional classes.
pub struct VerdictEngine {
    pub rep: CurveRepresentation,
    exceptional: Vec<(&'static str, Vec<crate::perm::Perm>)>,
}

pub const EXCEPTIONAL: [(&str, &[&str]); 4] = [
    ("trivial", &[]),
    ("C2", &["i12"]),
    ("V4", &["i12", "i13"]),
    ("C4", &["(12)(34)i15"]),
];

impl VerdictEngine {
    pub fn new() -> Result<Self> {
        let lat = PicardLattice::del_pezzo(4)?;
        let rep = CurveRepresentation::new(generate_weyl(&lat)?)?;
        let mut exceptional = Vec::new();
        for (tag, words) in EXCEPTIONAL {
            let g = weyl::subgroup_from_words(&rep.ambient, words)?;
            exceptional.push((tag, rep.class_key(&g)?));
        }
        Ok(VerdictEngine { rep, exceptional })
    }

    /// Tag of the exceptional class containing `g`, if any.
    pub fn exceptional_tag(&self, g: &ActionGroup) -> Result<Option<&'static str>> {
        let key = self.rep.class_key(g)?;
        Ok(self
            .exceptional
            .iter()
            .find(|(_, k)| *k == key)
            .map(|(t, _)| *t))
    }

    fn conj_to(&self, x: &LatticeAutomorphism, word: &str) -> Result<bool> {
        let y = named_element(&self.rep.ambient.lattice, word)?;
        self.rep.elements_conjugate(x, &y)
    }

    fn normal_cyclic_conj_to(&self, g: &ActionGroup, word: &str) -> Result<bool> {
        for x in &g.elements {
            if x.is_identity() || !self.conj_to(x, word)? {
                continue;
            }
            let c = ActionGroup::generate(&g.lattice, core::slice::from_ref(x), Vec::new())?;
            let normal = g.elements.iter().all(|h| {
                c.elements
                    .iter()
                    .all(|y| c.contains(&h.compose(y).compose(&h.inverse())))
            });
            if normal {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// The replay case through which degree 4 reaches rationality, or `None`
    /// for the exceptional classes.
    pub fn degree4_route(&self, g: &ActionGroup) -> Result<Option<&'static str>> {
        let lat = &g.lattice;
        let mut kernel = Vec::new();
        for x in &g.elements {
            if let Some(s) = iota_support(lat, x)? {
                if s.len() == 4 {
                    return Ok(Some("DP4i1234"));
                }
                kernel.push(x.clone());
            }
        }
        let has_order3 = g.elements.iter().any(|x| x.order() % 3 == 0);
        match kernel.len() {
            4 => {
                if g.order() == 4 {
                    Ok(None)
                } else if !has_order3 {
                    Ok(self
                        .normal_cyclic_conj_to(g, "(12)(45)")?
                        .then_some("DP4C2"))
                } else {
                    Ok(Some("DP4i12i13"))
                }
            }
            2 => {
                if has_order3 {
                    Ok(Some("DP4C3"))
                } else if self.exceptional_tag(g)?.is_some() {
                    Ok(None)
                } else {
                    Ok(self
                        .normal_cyclic_conj_to(g, "(12)(34)")?
                        .then_some("DP4C2"))
                }
            }
            _ => {
                if g.order() == 1 {
                    Ok(None)
                } else if self.normal_cyclic_conj_to(g, "(12)(34)")? {
                    Ok(Some("DP4C2"))
                } else if self.normal_cyclic_conj_to(g, "(123)")? {
                    Ok(Some("DP4C3"))
                } else if self.normal_cyclic_conj_to(g, "(12345)")? {
                    Ok(Some("DP4C5"))
                } else {
                    Ok(None)
                }
            }
        }
    }

    pub fn main_verdict(&self, s: &EquivariantSurface) -> Result<Verdict> {
        let d = s.k2();
        if !(4..=9).contains(&d) {
            return Err(Error::DegreeOutOfRange(d));
        }
        if !s.has_rational_point {
            return Ok(Verdict::OutOfScope(
                "no rational point is known; the criteria need a point".into(),
            ));
        }
        if d >= 5 {
            return Ok(Verdict::Rational {
                route: "K^2 >= 5 with a point".into(),
            });
        }
        if let Some(tag) = self.exceptional_tag(&s.g_subgroup)? {
            return Ok(Verdict::ExceptionalCase(tag.to_string()));
        }
        let route = self
            .degree4_route(&s.g_subgroup)?
            .unwrap_or("conjugacy classification");
        Ok(Verdict::Rational {
            route: route.to_string(),
        })
    }
}

/// One conjugacy class of subgroups of order at most 4 in `W(D_5)`.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub group: ActionGroup,
    pub passes_filter: bool,
    pub verdict: Verdict,
    pub route: Option<&'static str>,
}

impl VerdictEngine {
    /// Representatives of all conjugacy classes of subgroups of order at most 4.
    pub fn small_subgroup_classes(&self) -> Result<Vec<ActionGroup>> {
        let lat = self.rep.ambient.lattice.clone();
        let els = &self.rep.ambient.elements;
        let mut cands: Vec<ActionGroup> = Vec::new();
        for x in els {
            if x.order() <= 4 {
                cands.push(ActionGroup::generate(
                    &lat,
                    core::slice::from_ref(x),
                    Vec::new(),
                )?);
            }
        }
        let invols: Vec<&LatticeAutomorphism> = els.iter().filter(|x| x.order() == 2).collect();
        for (i, a) in invols.iter().enumerate() {
            for b in &invols[i + 1..] {
                if a.compose(b) == b.compose(a) {
                    cands.push(ActionGroup::generate(
                        &lat,
                        &[(*a).clone(), (*b).clone()],
                        Vec::new(),
                    )?);
                }
            }
        }
        let mut seen = BTreeSet::new();
        let mut classes = BTreeSet::new();
        let mut out = Vec::new();
        for g in cands {
            if seen.insert(g.elements.clone()) && classes.insert(self.rep.class_key(&g)?) {
                out.push(g);
            }
        }
        Ok(out)
    }

    /// Runs the degree-4 verdict over all small subgroup classes.
    pub fn sweep(&self) -> Result<Vec<SweepRow>> {
        let mut rows = Vec::new();
        for g in self.small_subgroup_classes()? {
            let passes_filter = weyl::passes_nonact_filter(&g)?;
            let s = EquivariantSurface::with_group(g.clone(), true);
            let verdict = self.main_verdict(&s)?;
            let route = self.degree4_route(&g)?;
            rows.push(SweepRow {
                group: g,
                passes_filter,
                verdict,
                route,
            });
        }
        Ok(rows)
    }
}

/// Convenience wrapper building a fresh [`VerdictEngine`].
pub fn main_verdict(s: &EquivariantSurface) -> Result<Verdict> {
    let d = s.k2();
    if d != 4 {
        if !(4..=9).contains(&d) {
            return Err(Error::DegreeOutOfRange(d));
        }
        if !s.has_rational_point {
            return Ok(Verdict::OutOfScope(
                "no rational point is known; the criteria need a point".into(),
            ));
        }
        return Ok(Verdict::Rational {
            route: "K^2 >= 5 with a point".into(),
        });
    }
    VerdictEngine::new()?.main_verdict(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::subgroup_from_words;

    fn dp(d: i64) -> PicardLattice {
        PicardLattice::del_pezzo(d).unwrap()
    }

    fn group(d: i64, words: &[&str]) -> ActionGroup {
        subgroup_from_words(&generate_weyl(&dp(d)).unwrap(), words).unwrap()
    }

    #[test]
    fn minimality_examples() {
        let x5 = dp(5);
        let s = EquivariantSurface::with_group(group(5, &["(12)(34)"]), true);
        let m = is_minimal(&s);
        assert!(!m.minimal);
        assert!(m.contractible.contains(&{
            let mut v = vec![x5.e(1), x5.e(2)];
            v.sort();
            v
        }));
        assert!(m.contractible.contains(&{
            let mut v = vec![x5.e(3), x5.e(4)];
            v.sort();
            v
        }));
        let w = EquivariantSurface::with_group(generate_weyl(&dp(4)).unwrap(), true);
        assert!(is_minimal(&w).minimal);
        assert!(
            !is_minimal(&EquivariantSurface::with_group(
                ActionGroup::trivial(&x5),
                true
            ))
            .minimal
        );
    }

    #[test]
    fn reduction_examples() {
        let x = dp(4);
        let t = mmp_reduce(&EquivariantSurface::with_group(
            group(4, &["(12345)"]),
            true,
        ))
        .unwrap();
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.steps[0].orbit, vec![x.conic_q()]);
        assert_eq!(t.final_surface.k2(), 5);
        let t = mmp_reduce(&EquivariantSurface::with_group(
            ActionGroup::trivial(&dp(5)),
            true,
        ))
        .unwrap();
        assert_eq!(t.final_surface.k2(), 9);
        assert_eq!(t.steps.iter().map(|s| s.orbit.len() as i64).sum::<i64>(), 4);
        let t = mmp_reduce(&EquivariantSurface::with_group(
            generate_weyl(&x).unwrap(),
            true,
        ))
        .unwrap();
        assert!(t.steps.is_empty());
    }

    #[test]
    fn criteria_examples() {
        let w = EquivariantSurface::with_group(generate_weyl(&dp(4)).unwrap(), true);
        let f = rationality_criteria(&w);
        assert!(f.minimal && !f.iskovskikh_rational);
        let f1 = EquivariantSurface::with_group(ActionGroup::trivial(&dp(8)), true);
        let f = rationality_criteria(&f1);
        assert_eq!((f.k2, f.rho_g), (8, 2));
        assert!(f.piccrit_rational);
        let p2 = EquivariantSurface::with_group(ActionGroup::trivial(&dp(9)), true);
        let f = rationality_criteria(&p2);
        assert!(f.iskovskikh_rational && f.toric_form && f.piccrit_rational);
    }

    #[test]
    fn sweep_routes_match_verdicts() {
        let eng = VerdictEngine::new().unwrap();
        let rows = eng.sweep().unwrap();
        let mut tags = Vec::new();
        for r in rows.iter().filter(|r| r.passes_filter) {
            match &r.verdict {
                Verdict::ExceptionalCase(t) => {
                    tags.push(t.clone());
                    assert_eq!(r.route, None);
                }
                _ => assert!(
                    r.route.is_some(),
                    "no route for {:?}",
                    r.group.elements.len()
                ),
            }
        }
        tags.sort();
        assert_eq!(tags, vec!["C2", "C4", "V4", "trivial"]);
    }

    #[test]
    fn verdict_examples() {
        let eng = VerdictEngine::new().unwrap();
        let v4 = EquivariantSurface::with_group(group(4, &["i12", "i13"]), true);
        assert_eq!(
            eng.main_verdict(&v4).unwrap(),
            Verdict::ExceptionalCase("V4".into())
        );
        let c3 = EquivariantSurface::with_group(group(4, &["(123)"]), true);
        assert!(matches!(
            eng.main_verdict(&c3).unwrap(),
            Verdict::Rational { .. }
        ));
        let d5 = EquivariantSurface::with_group(group(5, &["(12)"]), true);
        assert!(matches!(
            main_verdict(&d5).unwrap(),
            Verdict::Rational { .. }
        ));
        let nopt = EquivariantSurface::with_group(group(5, &["(12)"]), false);
        assert!(matches!(
            main_verdict(&nopt).unwrap(),
            Verdict::OutOfScope(_)
        ));
        let c4 = EquivariantSurface::with_group(group(4, &["(12)(34)i15"]), true);
        assert_eq!(
            eng.main_verdict(&c4).unwrap(),
            Verdict::ExceptionalCase("C4".into())
        );
    }
}
