//! End-to-end verification of the explicit quotient examples.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::field::MultiQuadraticField;
use super::fixtures::{
    self, format_signs, parse_point, ExampleFixture, ExampleKind, SurfaceFixture,
};
use super::labeling::{all_labelings, lattice_element, Labeling};
use super::surface::{
    find_point, fixed_points, line_permutation, sign_pattern_lines, verify_lines, LineOnSurface,
    PointMap, ProjPoint, SignedPermutation,
};
use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, PicardLattice};
use crate::weyl::{
    generate_weyl, invariant_rank, iota, iota_support, named_element, ActionGroup,
    CurveRepresentation, LatticeAutomorphism,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleCheck {
    pub what: String,
    pub expected: String,
    pub computed: String,
}

impl ExampleCheck {
    pub fn passed(&self) -> bool {
        self.expected == self.computed
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleReport {
    pub example_id: String,
    pub surface: String,
    /// `sign pattern = label` for the sixteen lines.
    pub lines: Vec<String>,
    pub galois_image: Vec<String>,
    pub rho_x: usize,
    pub rho_g: usize,
    /// Fixed points of each listed element, keyed by the map.
    pub fixed_points: Vec<(String, Vec<String>)>,
    pub rho_y: Option<usize>,
    pub verdict: String,
    pub checks: Vec<ExampleCheck>,
    pub annotations: Vec<String>,
}

impl ExampleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(ExampleCheck::passed)
    }

    pub fn failures(&self) -> Vec<&ExampleCheck> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }
}

pub fn example_ids() -> Result<Vec<String>> {
    Ok(fixtures::examples()?.into_iter().map(|e| e.id).collect())
}

fn check(
    out: &mut Vec<ExampleCheck>,
    what: &str,
    expected: impl ToString,
    computed: impl ToString,
) {
    out.push(ExampleCheck {
        what: what.into(),
        expected: expected.to_string(),
        computed: computed.to_string(),
    });
}

fn map_name(g: &SignedPermutation) -> String {
    let parts: Vec<String> = (0..5)
        .map(|i| {
            format!(
                "{}x{}",
                if g.signs[i] < 0 { "-" } else { "" },
                g.perm[i] + 1
            )
        })
        .collect();
    format!("({})", parts.join(":"))
}

/// Sign changes `x_i, x_j -> -x_i, -x_j` are matched with `iota_ij`; the least such labeling.
pub fn calibrated_labeling(
    s: &SurfaceFixture,
    lines: &[LineOnSurface],
    incidence: &[Vec<u8>],
) -> Result<Labeling> {
    let x = PicardLattice::del_pezzo(4)?;
    let mut flips = Vec::new();
    for j in 2..=5 {
        let perm = line_permutation(
            &s.surface,
            lines,
            &PointMap::Coordinate(SignedPermutation::flip(&[1, j])),
        )?;
        flips.push((perm, iota(&x, &[1, j])?));
    }
    let all = all_labelings(incidence)?;
    let count = all.len();
    let first = all
        .into_iter()
        .find(|lab| {
            flips
                .iter()
                .all(|(perm, want)| lattice_element(lab, perm).as_ref() == Ok(want))
        })
        .ok_or(Error::NoLabeling)?;
    Ok(Labeling {
        labels: first,
        count,
    })
}

fn iota_name(x: &PicardLattice, g: &LatticeAutomorphism) -> Result<String> {
    Ok(match iota_support(x, g)? {
        Some(s) if s.is_empty() => "id".to_string(),
        Some(s) => format!("i{}", s.iter().map(|d| d.to_string()).collect::<String>()),
        None => format!("{:?}", g.matrix.to_rows()),
    })
}

fn element_names(x: &PicardLattice, group: &ActionGroup) -> Result<String> {
    let mut names: Vec<String> = group
        .elements
        .iter()
        .filter(|g| !g.is_identity())
        .map(|g| iota_name(x, g))
        .collect::<Result<_>>()?;
    names.sort();
    Ok(format!("{{{}}}", names.join(", ")))
}

/// Closure of sign-and-permutation maps up to an overall sign.
fn closure_maps(gens: &[SignedPermutation]) -> Vec<SignedPermutation> {
    let canon = |g: SignedPermutation| {
        if g.signs[0] < 0 {
            SignedPermutation {
                perm: g.perm,
                signs: g.signs.map(|s| -s),
            }
        } else {
            g
        }
    };
    let mut out = vec![SignedPermutation::identity()];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let y = canon(g.compose(&out[i]));
            if !out.contains(&y) {
                out.push(y);
            }
        }
        i += 1;
    }
    out
}

fn closure_masks(gens: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize];
    for &g in gens {
        let extra: Vec<usize> = out.iter().map(|m| m ^ g).collect();
        for m in extra {
            if !out.contains(&m) {
                out.push(m);
            }
        }
    }
    out
}

/// All elements of `G x Gal`, as a coordinate map after a conjugation.
fn product_elements(g: &[SignedPermutation], gal: &[usize]) -> Vec<(SignedPermutation, usize)> {
    let mut out = Vec::new();
    for a in closure_maps(g) {
        for &m in &closure_masks(gal) {
            out.push((a, m));
        }
    }
    out
}

fn act(h: &(SignedPermutation, usize), p: &ProjPoint) -> ProjPoint {
    h.0.apply(&p.conjugate(h.1))
}

/// Orbits of `elems` on `points`, as sorted index lists.
fn point_orbits(
    elems: &[(SignedPermutation, usize)],
    points: &[ProjPoint],
) -> Result<Vec<Vec<usize>>> {
    let mut seen = vec![false; points.len()];
    let mut out = Vec::new();
    for i in 0..points.len() {
        if seen[i] {
            continue;
        }
        let mut orbit = BTreeSet::new();
        for h in elems {
            let j = find_point(points, &act(h, &points[i])).ok_or_else(|| {
                Error::Unsupported(format!("orbit of {} leaves the point set", points[i]))
            })?;
            orbit.insert(j);
        }
        for &j in &orbit {
            seen[j] = true;
        }
        out.push(orbit.into_iter().collect());
    }
    Ok(out)
}

/// Image of the hyperplane `f.x = 0`.
fn act_on_form(h: &(SignedPermutation, usize), f: &ProjPoint) -> ProjPoint {
    let f = f.conjugate(h.1);
    let g = &h.0;
    // y = g(x) gives f.x = sum_i f_{perm(i)} s_i y_i
    ProjPoint(
        (0..5)
            .map(|i| {
                if g.signs[i] < 0 {
                    -&f.0[g.perm[i]]
                } else {
                    f.0[g.perm[i]].clone()
                }
            })
            .collect(),
    )
}

fn orbit_count<T: Ord + Clone>(items: &[T], images: impl Fn(&T) -> Vec<T>) -> usize {
    let mut seen: BTreeSet<T> = BTreeSet::new();
    let mut n = 0;
    for x in items {
        if seen.insert(x.clone()) {
            n += 1;
            seen.extend(images(x));
        }
    }
    n
}

struct Context {
    field: Arc<MultiQuadraticField>,
    lines: Vec<LineOnSurface>,
    labeling: Labeling,
    weyl: ActionGroup,
}

impl Context {
    fn lattice_map(&self, s: &SurfaceFixture, m: &PointMap) -> Result<LatticeAutomorphism> {
        let perm = line_permutation(&s.surface, &self.lines, m)?;
        let g = lattice_element(&self.labeling.labels, &perm)?;
        if !self.weyl.contains(&g) {
            return Err(Error::NotInGroup(format!("{m:?}")));
        }
        Ok(g)
    }
}

fn invariant_disjoint_set(
    x: &PicardLattice,
    group: &ActionGroup,
    first: &DivisorClass,
    size: usize,
) -> Option<Vec<DivisorClass>> {
    let lines = x.standard_lines().ok()?;
    let others: Vec<&DivisorClass> = lines
        .iter()
        .filter(|c| *c != first && x.dot(c, first) == 0)
        .collect();
    let n = others.len();
    let want = size.checked_sub(1)?;
    let mut idx: Vec<usize> = (0..want).collect();
    loop {
        if want <= n {
            let mut set: Vec<DivisorClass> = vec![first.clone()];
            set.extend(idx.iter().map(|&i| others[i].clone()));
            let disjoint = set
                .iter()
                .enumerate()
                .all(|(i, a)| set[i + 1..].iter().all(|b| x.dot(a, b) == 0));
            let stable = group
                .elements
                .iter()
                .all(|g| set.iter().all(|c| set.contains(&g.apply(c))));
            if disjoint && stable {
                return Some(set);
            }
        }
        // next combination
        let mut k = want;
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            if idx[k] < n - want + k {
                idx[k] += 1;
                for j in k + 1..want {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn verdict_word(v: &str) -> &str {
    v.split(':').next().unwrap_or(v)
}

pub fn verify_example(example_id: &str) -> Result<ExampleReport> {
    let ex = fixtures::examples()?
        .into_iter()
        .find(|e| e.id == example_id)
        .ok_or_else(|| {
            Error::UnknownName(format!(
                "{example_id}; known: {}",
                example_ids().unwrap_or_default().join(", ")
            ))
        })?;
    let s = fixtures::surface(&ex.surface)?;
    let mut checks = Vec::new();
    let mut annotations: Vec<String> = ex.notes.clone();

    check(
        &mut checks,
        "k-point on surface",
        "true",
        s.surface.contains(&s.point),
    );
    let found: Vec<String> = sign_pattern_lines(&s.surface, &s.base)
        .iter()
        .map(|(p, _)| format_signs(p))
        .collect();
    let listed: Vec<String> = s.signs.iter().map(format_signs).collect();
    check(
        &mut checks,
        "sign patterns of the sixteen lines",
        found.join(" "),
        listed.join(" "),
    );
    let lines = s.lines();
    let incidence = verify_lines(&s.surface, &lines)?;
    let labeling = calibrated_labeling(&s, &lines, &incidence)?;
    check(
        &mut checks,
        "labelings of the incidence graph",
        1920,
        labeling.count,
    );
    let x = PicardLattice::del_pezzo(4)?;
    let weyl = generate_weyl(&x)?;
    let ctx = Context {
        field: s.field.clone(),
        lines,
        labeling,
        weyl,
    };
    let names = ctx.labeling.names();
    let line_list = s
        .signs
        .iter()
        .zip(&names)
        .map(|(p, n)| format!("{} = {n}", format_signs(p)))
        .collect();

    let g_elems: Vec<LatticeAutomorphism> = ex
        .group
        .iter()
        .map(|g| ctx.lattice_map(&s, &PointMap::Coordinate(*g)))
        .collect::<Result<_>>()?;
    let masks: Vec<usize> = ex
        .galois
        .iter()
        .map(|gens| {
            gens.iter().try_fold(0usize, |m, &g| {
                Ok::<_, Error>(m | ctx.field.generator_mask(g)?)
            })
        })
        .collect::<Result<_>>()?;
    let gal_elems: Vec<LatticeAutomorphism> = masks
        .iter()
        .map(|&m| ctx.lattice_map(&s, &PointMap::Galois(m)))
        .collect::<Result<_>>()?;
    let gal = ActionGroup::generate(&x, &gal_elems, Vec::new())?;
    let both = gal.join(&g_elems)?;
    let rho_x = invariant_rank(&gal);
    let rho_g = invariant_rank(&both);
    let galois_image: Vec<String> = gal_elems
        .iter()
        .map(|g| iota_name(&x, g))
        .collect::<Result<_>>()?;

    if ex.kind != ExampleKind::Construction {
        let want: Vec<LatticeAutomorphism> = ex
            .image
            .iter()
            .map(|w| named_element(&x, w))
            .collect::<Result<_>>()?;
        let want = ActionGroup::generate(&x, &want, ex.image.clone())?;
        check(
            &mut checks,
            "Galois image",
            element_names(&x, &want)?,
            element_names(&x, &gal)?,
        );
    }
    if let Some(r) = ex.rho_x {
        check(&mut checks, "rho(X)", r, rho_x);
    }
    if let Some(r) = ex.rho_g {
        check(&mut checks, "rho(X)^G", r, rho_g);
    }

    let mut fixed_list = Vec::new();
    for (g, pts) in &ex.fixed {
        let computed = fixed_points(&s.surface, g, &ctx.field)?;
        let expected: Vec<ProjPoint> = pts
            .iter()
            .map(|p| parse_point(&ctx.field, p))
            .collect::<Result<_>>()?;
        let same = computed.len() == expected.len()
            && expected.iter().all(|p| find_point(&computed, p).is_some());
        let shown: Vec<String> = computed
            .iter()
            .map(|p| p.normalized().map(|q| format!("{q}")))
            .collect::<Result<_>>()?;
        check(
            &mut checks,
            &format!("fixed points of {}", map_name(g)),
            "as displayed",
            if same { "as displayed" } else { "different" },
        );
        fixed_list.push((map_name(g), shown));
    }

    for stated in &ex.stated {
        let classes: Vec<DivisorClass> = stated
            .iter()
            .map(|n| x.parse_line(n))
            .collect::<Result<_>>()?;
        let stable = gal
            .elements
            .iter()
            .all(|g| classes.iter().all(|c| classes.contains(&g.apply(c))));
        let joined = stated.join(", ");
        let alt = invariant_disjoint_set(&x, &gal, &classes[0], classes.len());
        check(
            &mut checks,
            &format!("Galois-invariant set of {} disjoint lines", classes.len()),
            "exists",
            if alt.is_some() { "exists" } else { "none" },
        );
        if stable {
            annotations.push(format!("{joined} is Galois-invariant"));
        } else {
            let alt = alt
                .map(|v| v.iter().map(|c| x.name(c)).collect::<Vec<_>>().join(", "))
                .unwrap_or_default();
            annotations.push(format!("{joined} is not Galois-invariant; {alt} is"));
        }
    }

    let elems = product_elements(&ex.group, &masks);
    let (rho_y, verdict) = match ex.kind {
        ExampleKind::Construction => (None, "n/a".to_string()),
        ExampleKind::Involution => {
            let pts = fixed_points(&s.surface, &ex.group[0], &ctx.field)?;
            let orbits = point_orbits(&elems, &pts)?;
            if let Some(t) = ex.transitive {
                check(
                    &mut checks,
                    "fixed points form one orbit",
                    t,
                    orbits.len() == 1,
                );
            }
            let r = rho_g + orbits.len();
            let v = if r == 2 {
                "non-rational: minimal conic bundle with K^2 = 2".to_string()
            } else if r + 2 >= 7 {
                "rational: rho + K^2 >= 7".to_string()
            } else {
                annotations.push(
                    "rationality rests on the stated contraction of singular fibre components"
                        .into(),
                );
                "rational: conic bundle with K^2 = 2 and rho >= 3".to_string()
            };
            (Some(r), v)
        }
        ExampleKind::Klein => {
            let nontrivial: Vec<SignedPermutation> = closure_maps(&ex.group)
                .into_iter()
                .filter(|g| !g.is_identity_projectively())
                .collect();
            let mut all_pts = Vec::new();
            let mut per = Vec::new();
            for g in &nontrivial {
                let pts = fixed_points(&s.surface, g, &ctx.field)?;
                per.push((all_pts.len(), pts.len()));
                all_pts.extend(pts);
            }
            let orbits = point_orbits(&elems, &all_pts)?;
            let transitive: Vec<bool> = per
                .iter()
                .map(|&(start, n)| {
                    orbits
                        .iter()
                        .any(|o| (start..start + n).all(|i| o.contains(&i)))
                })
                .collect();
            if let Some(t) = ex.transitive {
                check(
                    &mut checks,
                    "each element's fixed points form one orbit",
                    format!("{:?}", vec![t; 3]),
                    format!("{transitive:?}"),
                );
            }
            // orbits of singular points and of the three contracted curves
            let r = (rho_g + orbits.len())
                .checked_sub(3)
                .ok_or_else(|| Error::Unsupported("negative Picard rank".into()))?;
            let v = match r {
                1 => "non-rational: minimal del Pezzo surface of degree 4".to_string(),
                r if r + 4 >= 7 => "rational: rho + K^2 >= 7".to_string(),
                _ => {
                    return Err(Error::Unsupported(format!(
                        "del Pezzo surface of degree 4 with rho = {r}"
                    )))
                }
            };
            (Some(r), v)
        }
        ExampleKind::Cyclic4 => {
            let g = ex.group[0];
            let g2 = g.compose(&g);
            check(&mut checks, "order of g", 4, closure_maps(&[g]).len());
            let gl = &g_elems[0];
            let rep = CurveRepresentation::new(ctx.weyl.clone())?;
            let model = named_element(&x, "(12)(34)i15")?;
            check(
                &mut checks,
                "g conjugate to (12)(34)i15",
                true,
                rep.elements_conjugate(gl, &model)?,
            );
            let pts = fixed_points(&s.surface, &g2, &ctx.field)?;
            let fixed_by_g: Vec<usize> = (0..pts.len())
                .filter(|&i| pts[i].same_as(&g.apply(&pts[i])))
                .collect();
            check(
                &mut checks,
                "fixed points of g^2 fixed by g",
                2,
                fixed_by_g.len(),
            );
            let forms: Vec<ProjPoint> = ex
                .branches
                .iter()
                .map(|f| parse_point(&ctx.field, f))
                .collect::<Result<_>>()?;
            if forms.len() != 2 {
                return Err(Error::Parse(format!(
                    "{example_id}: two branch conics expected"
                )));
            }
            // curves: (point, chain index) for the A3 points, then the A1 point
            let swaps = |h: &(SignedPermutation, usize)| -> Result<bool> {
                let img = act_on_form(h, &forms[0]);
                if img.same_as(&forms[0]) {
                    Ok(false)
                } else if img.same_as(&forms[1]) {
                    Ok(true)
                } else {
                    Err(Error::Unsupported("branch conics are not permuted".into()))
                }
            };
            let mut moves = Vec::new();
            for h in &elems {
                let perm: Vec<usize> = pts
                    .iter()
                    .map(|p| {
                        find_point(&pts, &act(h, p))
                            .ok_or_else(|| Error::Unsupported("fixed points not permuted".into()))
                    })
                    .collect::<Result<_>>()?;
                moves.push((perm, swaps(h)?));
            }
            let (p1, p2) = (fixed_by_g[0], fixed_by_g[1]);
            let swapping = moves.iter().any(|(perm, sw)| perm[p1] == p2 && !sw);
            if let Some(t) = ex.transitive {
                check(
                    &mut checks,
                    "p1, p2 swapped without swapping C1, C2",
                    t,
                    swapping,
                );
            }
            let items: Vec<(usize, usize)> = [p1, p2]
                .iter()
                .flat_map(|&p| (1..=3).map(move |i| (p, i)))
                .chain([(usize::MAX, 0)])
                .collect();
            let exc = orbit_count(&items, |&(p, i)| {
                if p == usize::MAX {
                    return vec![(p, i)];
                }
                moves
                    .iter()
                    .map(|(perm, sw)| (perm[p], if *sw { 4 - i } else { i }))
                    .collect()
            });
            let conic_orbits = if moves.iter().any(|(_, sw)| *sw) {
                1
            } else {
                2
            };
            let r = (rho_g + exc)
                .checked_sub(conic_orbits + 1)
                .ok_or_else(|| Error::Unsupported("negative Picard rank".into()))?;
            let v = match r {
                2 => "non-rational: minimal conic bundle with K^2 = 4".to_string(),
                r if r + 4 >= 7 => "rational: rho + K^2 >= 7".to_string(),
                _ => {
                    return Err(Error::Unsupported(format!(
                        "conic bundle with K^2 = 4 and rho = {r}"
                    )))
                }
            };
            (Some(r), v)
        }
    };
    if let (Some(want), Some(r)) = (&ex.rho_y, rho_y) {
        match want.strip_prefix(">=") {
            Some(b) => check(
                &mut checks,
                "rho(Y)",
                want,
                if r >= b.parse().unwrap_or(usize::MAX) {
                    want.clone()
                } else {
                    r.to_string()
                },
            ),
            None => check(&mut checks, "rho(Y)", want, r),
        }
    }
    if let Some(v) = &ex.verdict {
        check(&mut checks, "verdict", v, verdict_word(&verdict));
    }
    Ok(ExampleReport {
        example_id: ex.id.clone(),
        surface: s.name.clone(),
        lines: line_list,
        galois_image,
        rho_x,
        rho_g,
        fixed_points: fixed_list,
        rho_y,
        verdict,
        checks,
        annotations,
    })
}

/// All fixtures, for tooling.
pub fn example_fixtures() -> Result<Vec<ExampleFixture>> {
    fixtures::examples()
}
