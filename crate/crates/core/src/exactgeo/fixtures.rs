//! Plain-text fixtures for the explicit surfaces and examples.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::field::{parse_element, MultiQuadraticField};
use super::surface::{LineOnSurface, ProjPoint, QuarticSurface, SignedPermutation};
use crate::error::{Error, Result};
use crate::Q;

pub const SURFACES: &str = include_str!("../../data/surfaces.txt");
pub const EXAMPLES: &str = include_str!("../../data/examples.txt");

type Block<'a> = (String, Vec<(&'a str, &'a str)>);

/// Blocks of `key rest` lines introduced by `head <name>`.
fn blocks<'a>(text: &'a str, head: &str) -> Result<Vec<Block<'a>>> {
    let mut out: Vec<Block<'a>> = Vec::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        if key == head {
            out.push((rest.to_string(), Vec::new()));
        } else {
            out.last_mut()
                .ok_or_else(|| Error::Parse(format!("`{line}` before any {head}")))?
                .1
                .push((key, rest));
        }
    }
    Ok(out)
}

fn get<'a>(entries: &[(&str, &'a str)], key: &str, name: &str) -> Result<&'a str> {
    entries
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| Error::Parse(format!("{name}: missing `{key}`")))
}

fn all<'a>(entries: &[(&str, &'a str)], key: &str) -> Vec<&'a str> {
    entries
        .iter()
        .filter(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .collect()
}

fn ints(s: &str) -> Result<Vec<i64>> {
    s.split_whitespace()
        .map(|w| {
            w.parse()
                .map_err(|_| Error::Parse(format!("integer `{w}`")))
        })
        .collect()
}

fn five(s: &str) -> Result<[Q; 5]> {
    let v = ints(s)?;
    if v.len() != 5 {
        return Err(Error::DimensionMismatch {
            expected: 5,
            found: v.len(),
        });
    }
    Ok(core::array::from_fn(|i| Q::from_integer(v[i])))
}

pub fn parse_point(field: &Arc<MultiQuadraticField>, s: &str) -> Result<ProjPoint> {
    let coords: Vec<&str> = s.split(':').collect();
    if coords.len() != 5 {
        return Err(Error::DimensionMismatch {
            expected: 5,
            found: coords.len(),
        });
    }
    Ok(ProjPoint(
        coords
            .iter()
            .map(|c| parse_element(field, c))
            .collect::<Result<_>>()?,
    ))
}

/// Expands every `±` into both signs, in the order `+` first.
pub fn expand_pm(s: &str) -> Vec<String> {
    match s.find('±') {
        None => alloc::vec![s.to_string()],
        Some(i) => {
            let (head, tail) = (&s[..i], &s[i + '±'.len_utf8()..]);
            let mut out = Vec::new();
            for sign in ["", "-"] {
                out.extend(expand_pm(&format!("{head}{sign}{tail}")));
            }
            out
        }
    }
}

/// Parses `-2 1 4 3 -5` as `y = (-x2, x1, x4, x3, -x5)`.
pub fn parse_map(s: &str) -> Result<SignedPermutation> {
    let v = ints(s)?;
    if v.len() != 5 {
        return Err(Error::DimensionMismatch {
            expected: 5,
            found: v.len(),
        });
    }
    let mut g = SignedPermutation::identity();
    let mut seen = [false; 5];
    for (i, &x) in v.iter().enumerate() {
        let j = x.unsigned_abs() as usize;
        if !(1..=5).contains(&j) || seen[j - 1] {
            return Err(Error::Parse(format!("map `{s}`")));
        }
        seen[j - 1] = true;
        g.perm[i] = j - 1;
        g.signs[i] = x.signum();
    }
    Ok(g)
}

#[derive(Clone, Debug)]
pub struct SurfaceFixture {
    pub name: String,
    pub field: Arc<MultiQuadraticField>,
    pub surface: QuarticSurface,
    pub point: ProjPoint,
    pub base: LineOnSurface,
    /// Sign patterns of the sixteen lines, `+`/`-` per coordinate.
    pub signs: Vec<[i64; 5]>,
}

impl SurfaceFixture {
    pub fn lines(&self) -> Vec<LineOnSurface> {
        self.signs
            .iter()
            .map(|s| self.base.with_signs(*s))
            .collect()
    }
}

fn parse_signs(s: &str) -> Result<[i64; 5]> {
    let v: Vec<i64> = s
        .chars()
        .map(|c| match c {
            '+' => Ok(1),
            '-' => Ok(-1),
            _ => Err(Error::Parse(format!("sign pattern `{s}`"))),
        })
        .collect::<Result<_>>()?;
    if v.len() != 5 {
        return Err(Error::DimensionMismatch {
            expected: 5,
            found: v.len(),
        });
    }
    Ok(core::array::from_fn(|i| v[i]))
}

pub fn format_signs(s: &[i64; 5]) -> String {
    s.iter().map(|&x| if x < 0 { '-' } else { '+' }).collect()
}

pub fn surfaces() -> Result<Vec<SurfaceFixture>> {
    let mut out = Vec::new();
    for (name, e) in blocks(SURFACES, "surface")? {
        let field = MultiQuadraticField::new(&ints(get(&e, "field", &name)?)?)?;
        let surface =
            QuarticSurface::new(five(get(&e, "a", &name)?)?, five(get(&e, "b", &name)?)?)?;
        let point = parse_point(&field, get(&e, "point", &name)?)?;
        let base = LineOnSurface {
            p: parse_point(&field, get(&e, "p", &name)?)?,
            q: parse_point(&field, get(&e, "q", &name)?)?,
        };
        let signs = all(&e, "signs")
            .iter()
            .flat_map(|l| l.split_whitespace())
            .map(parse_signs)
            .collect::<Result<_>>()?;
        out.push(SurfaceFixture {
            name,
            field,
            surface,
            point,
            base,
            signs,
        });
    }
    Ok(out)
}

pub fn surface(name: &str) -> Result<SurfaceFixture> {
    surfaces()?
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownName(name.into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExampleKind {
    /// Surface, lines and fixed points only.
    Construction,
    /// `G = C2` generated by one sign change.
    Involution,
    /// `G = V4` generated by two sign changes.
    Klein,
    /// `G = C4` generated by a signed permutation with square a sign change.
    Cyclic4,
}

#[derive(Clone, Debug)]
pub struct ExampleFixture {
    pub id: String,
    pub surface: String,
    pub kind: ExampleKind,
    pub group: Vec<SignedPermutation>,
    /// Generators of the Galois group, each the list of field generators whose roots it negates.
    pub galois: Vec<Vec<i64>>,
    pub image: Vec<String>,
    pub rho_x: Option<usize>,
    pub rho_g: Option<usize>,
    /// `(element, points with ± expanded)`.
    pub fixed: Vec<(SignedPermutation, Vec<String>)>,
    pub transitive: Option<bool>,
    pub stated: Vec<Vec<String>>,
    /// Linear forms cutting out the two invariant conics through the `C4` fixed points.
    pub branches: Vec<String>,
    pub rho_y: Option<String>,
    pub verdict: Option<String>,
    pub notes: Vec<String>,
}

fn yes_no(s: &str) -> Result<bool> {
    match s {
        "yes" => Ok(true),
        "no" => Ok(false),
        _ => Err(Error::Parse(format!("expected yes or no, found `{s}`"))),
    }
}

fn usize_of(s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::Parse(format!("integer `{s}`")))
}

pub fn examples() -> Result<Vec<ExampleFixture>> {
    let mut out = Vec::new();
    for (id, e) in blocks(EXAMPLES, "example")? {
        let kind = match get(&e, "kind", &id)? {
            "construction" => ExampleKind::Construction,
            "c2" => ExampleKind::Involution,
            "v4" => ExampleKind::Klein,
            "c4" => ExampleKind::Cyclic4,
            other => return Err(Error::Parse(format!("{id}: kind `{other}`"))),
        };
        let mut fixed = Vec::new();
        for f in all(&e, "fixed") {
            let (m, pts) = f
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("{id}: fixed `{f}`")))?;
            let pts = pts.split(';').flat_map(|p| expand_pm(p.trim())).collect();
            fixed.push((parse_map(m)?, pts));
        }
        out.push(ExampleFixture {
            surface: get(&e, "surface", &id)?.to_string(),
            kind,
            group: all(&e, "map")
                .into_iter()
                .map(parse_map)
                .collect::<Result<_>>()?,
            galois: all(&e, "galois")
                .into_iter()
                .map(ints)
                .collect::<Result<_>>()?,
            image: all(&e, "image")
                .iter()
                .flat_map(|l| l.split_whitespace())
                .map(String::from)
                .collect(),
            rho_x: all(&e, "rho").first().map(|s| usize_of(s)).transpose()?,
            rho_g: all(&e, "rho-g").first().map(|s| usize_of(s)).transpose()?,
            fixed,
            transitive: all(&e, "transitive")
                .first()
                .map(|s| yes_no(s))
                .transpose()?,
            stated: all(&e, "stated")
                .iter()
                .map(|l| l.split_whitespace().map(String::from).collect())
                .collect(),
            branches: all(&e, "branch").into_iter().map(String::from).collect(),
            rho_y: all(&e, "rho-y").first().map(|s| s.to_string()),
            verdict: all(&e, "verdict").first().map(|s| s.to_string()),
            notes: all(&e, "note").into_iter().map(String::from).collect(),
            id,
        });
    }
    Ok(out)
}
