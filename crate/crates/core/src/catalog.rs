//! The built-in family catalog: ambient weights and variable names, equation
//! format, parameter law, declared invariants, and construction of explicit
//! members over a prime field. Everything a model declares here is checked
//! against recomputation by the verification drivers; the catalog itself only
//! records the claims.

use crate::exactmath::{multipoly::random_form, rat, LinExpr, MultiPoly, PrimeField, Rat, Rng};
use crate::formats::{format_entry_check, FormatSpec, PF_PAIRS};
use crate::wps::{merge_basket, normalize_sing, SingType, WeightedSpace};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("cannot read {path}: {detail}")]
    Io { path: String, detail: String },
    #[error("{path}: {detail}")]
    Parse { path: String, detail: String },
    #[error("duplicate model id {0}")]
    DuplicateId(String),
    #[error("no model named {0} in the catalog")]
    UnknownModel(String),
    #[error("model {id}: n = {n} is outside the declared parameter range")]
    OutOfRange { id: String, n: i64, n_min: i64, n_max: Option<i64> },
    #[error("model {id} at n = {n}: {detail}")]
    BadModel { id: String, n: i64, detail: String },
    #[error("model {id}: {detail}")]
    BadSpec { id: String, detail: String },
}

/// r = slope·n + offset on the integer range n_min.. (n_max inclusive when
/// present; the fixed low-degree models pin n_max = n_min).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamLaw {
    pub slope: i64,
    pub offset: i64,
    pub n_min: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<i64>,
}

impl ParamLaw {
    pub fn r_at(&self, n: i64) -> i64 {
        self.slope * n + self.offset
    }

    pub fn contains(&self, n: i64) -> bool {
        n >= self.n_min && self.n_max.is_none_or(|m| n <= m)
    }
}

/// One declared class of orbifold points: `count` points of type
/// 1/order(a, b), all three indices affine in r.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasketEntry {
    pub count: usize,
    pub order: LinExpr,
    pub a: LinExpr,
    pub b: LinExpr,
}

/// A declared anticanonical self-intersection num(r)/den(r), coefficients
/// ascending in r. `known_discrepant` marks table rows whose printed value is
/// expected to disagree with recomputation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeclaredSquare {
    pub num: Vec<i64>,
    pub den: Vec<i64>,
    #[serde(default)]
    pub known_discrepant: bool,
}

fn poly_at(coeffs: &[i64], r: i64) -> i64 {
    coeffs.iter().rev().fold(0i64, |acc, &c| acc * r + c)
}

impl DeclaredSquare {
    pub fn value_at(&self, r: i64) -> Option<Rat> {
        match poly_at(&self.den, r) {
            0 => None,
            d => Some(rat(poly_at(&self.num, r), d)),
        }
    }
}

/// One catalog row: a family of surfaces indexed by n, with its declared
/// numerical profile and its expected place in the projection chains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub id: String,
    pub weights: Vec<LinExpr>,
    pub names: Vec<String>,
    pub format: FormatSpec,
    pub law: ParamLaw,
    /// Matrix positions pinned to single ambient variables. Row-major (i, j)
    /// for the rank format, packed upper-triangle pairs for the skew format,
    /// empty for hypersurfaces and intersections.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub placement: Vec<((usize, usize), usize)>,
    pub basket: Vec<BasketEntry>,
    pub deg_k2: DeclaredSquare,
    pub h0: i64,
    /// Declared projection center (a variable name), when the family is the
    /// source of a chain step.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<String>,
    /// Catalog id of the declared projection image family.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cascade_target: Option<String>,
}

impl ModelSpec {
    pub fn r_at(&self, n: i64) -> i64 {
        self.law.r_at(n)
    }

    /// The ambient space at parameter r; weights must come out as positive
    /// integers.
    pub fn space_at(&self, r: i64) -> Result<WeightedSpace, CatalogError> {
        let mut weights = Vec::with_capacity(self.weights.len());
        for (i, w) in self.weights.iter().enumerate() {
            let v = w.eval(r).ok_or_else(|| CatalogError::BadSpec {
                id: self.id.clone(),
                detail: format!("weight {w} of {} is a half-integer at r = {r}", self.names[i]),
            })?;
            if v <= 0 {
                return Err(CatalogError::BadSpec {
                    id: self.id.clone(),
                    detail: format!("weight {w} of {} is {v} at r = {r}", self.names[i]),
                });
            }
            weights.push(v);
        }
        let names: Vec<&str> = self.names.iter().map(|s| s.as_str()).collect();
        Ok(WeightedSpace::new(&names, &weights))
    }

    /// The declared basket at parameter r, normalized and merged.
    pub fn basket_at(&self, r: i64) -> Result<Vec<(usize, SingType)>, CatalogError> {
        let bad = |detail: String| CatalogError::BadSpec { id: self.id.clone(), detail };
        let mut sings = vec![];
        for e in &self.basket {
            let order = e
                .order
                .eval(r)
                .ok_or_else(|| bad(format!("basket order {} is a half-integer at r = {r}", e.order)))?;
            if order < 2 {
                return Err(bad(format!("basket order {} is {order} at r = {r}", e.order)));
            }
            let a = e.a.eval(r).ok_or_else(|| bad(format!("basket index {} at r = {r}", e.a)))?;
            let b = e.b.eval(r).ok_or_else(|| bad(format!("basket index {} at r = {r}", e.b)))?;
            match normalize_sing(order, a, b) {
                Ok(Some(t)) => sings.extend(std::iter::repeat_n(t, e.count)),
                Ok(None) => unreachable!("order checked above"),
                Err(we) => return Err(bad(we.to_string())),
            }
        }
        Ok(merge_basket(sings))
    }
}

/// A concrete member of a family: its ambient space and defining equations
/// over the working prime field, built reproducibly from a seed.
#[derive(Clone, Debug)]
pub struct ModelInstance {
    pub id: String,
    pub n: i64,
    pub r: i64,
    pub seed: u64,
    pub ws: WeightedSpace,
    pub codim: usize,
    pub eqs: Vec<MultiPoly<PrimeField>>,
}

fn degree_at(id: &str, n: i64, d: LinExpr, r: i64) -> Result<i64, CatalogError> {
    let v = d.eval(r).ok_or_else(|| CatalogError::BadModel {
        id: id.to_string(),
        n,
        detail: format!("degree {d} is a half-integer at r = {r}"),
    })?;
    if v < 1 {
        return Err(CatalogError::BadModel {
            id: id.to_string(),
            n,
            detail: format!("degree {d} is {v} at r = {r}"),
        });
    }
    Ok(v)
}

/// Build a member of the family with generic coefficients. Pinned matrix
/// positions become their single variable; every other entry (and every
/// hypersurface or intersection equation) is a dense form with nonzero
/// random coefficients on all its monomials.
pub fn instantiate(
    f: &PrimeField,
    spec: &ModelSpec,
    n: i64,
    seed: u64,
) -> Result<ModelInstance, CatalogError> {
    if !spec.law.contains(n) {
        return Err(CatalogError::OutOfRange {
            id: spec.id.clone(),
            n,
            n_min: spec.law.n_min,
            n_max: spec.law.n_max,
        });
    }
    let r = spec.r_at(n);
    let ws = spec.space_at(r)?;
    format_entry_check(&spec.format, &spec.placement, &ws, r).map_err(|e| {
        CatalogError::BadModel { id: spec.id.clone(), n, detail: e.to_string() }
    })?;
    let ring = ws.ring();
    let mut rng = Rng::keyed(seed, &["member", &spec.id, &n.to_string()]);
    let placed = |i: usize, j: usize| {
        spec.placement
            .iter()
            .find(|&&(pos, _)| pos == (i, j))
            .map(|&(_, var)| var)
    };
    let eqs = match &spec.format {
        FormatSpec::Hypersurface { d } => {
            vec![random_form(f, &ring, degree_at(&spec.id, n, *d, r)?, &mut rng)]
        }
        FormatSpec::Ci { d1, d2 } => vec![
            random_form(f, &ring, degree_at(&spec.id, n, *d1, r)?, &mut rng),
            random_form(f, &ring, degree_at(&spec.id, n, *d2, r)?, &mut rng),
        ],
        FormatSpec::Pfaffian5 { m, zeros } => {
            let mut upper = Vec::with_capacity(10);
            for (idx, &(i, j)) in PF_PAIRS.iter().enumerate() {
                let p = if zeros.contains(&(i, j)) {
                    MultiPoly::zero()
                } else if let Some(var) = placed(i, j) {
                    MultiPoly::var(f, &ring, var)
                } else {
                    random_form(f, &ring, degree_at(&spec.id, n, m[idx], r)?, &mut rng)
                };
                upper.push(p);
            }
            crate::formats::pfaffian_equations(f, &upper)
        }
        FormatSpec::P2xP2 { u, v } => {
            let mut t = vec![];
            for (i, &a) in u.iter().enumerate() {
                let mut row = vec![];
                for (j, &c) in v.iter().enumerate() {
                    let p = if let Some(var) = placed(i, j) {
                        MultiPoly::var(f, &ring, var)
                    } else {
                        row.push(random_form(f, &ring, degree_at(&spec.id, n, a + c, r)?, &mut rng));
                        continue;
                    };
                    row.push(p);
                }
                t.push(row);
            }
            crate::formats::segre_equations(f, &t)
        }
    };
    Ok(ModelInstance {
        id: spec.id.clone(),
        n,
        r,
        seed,
        ws,
        codim: spec.format.codim(),
        eqs,
    })
}

pub fn find<'a>(models: &'a [ModelSpec], id: &str) -> Result<&'a ModelSpec, CatalogError> {
    models
        .iter()
        .find(|m| m.id == id)
        .ok_or_else(|| CatalogError::UnknownModel(id.to_string()))
}

/// How many leading n values of a family the default drivers look at.
pub const VALIDATION_WINDOW: i64 = 8;

/// Structural checks on a catalog: unique ids, coherent shapes, resolvable
/// cross references, and sane evaluations across the leading window of each
/// family's parameter range.
pub fn validate_catalog(models: &[ModelSpec]) -> Result<(), CatalogError> {
    let mut ids = std::collections::BTreeSet::new();
    for m in models {
        if !ids.insert(m.id.as_str()) {
            return Err(CatalogError::DuplicateId(m.id.clone()));
        }
    }
    for m in models {
        let bad = |detail: String| CatalogError::BadSpec { id: m.id.clone(), detail };
        if m.names.len() != m.weights.len() {
            return Err(bad(format!(
                "{} names for {} weights",
                m.names.len(),
                m.weights.len()
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for nm in &m.names {
            if !seen.insert(nm.as_str()) {
                return Err(bad(format!("variable {nm} repeats")));
            }
        }
        match &m.format {
            FormatSpec::Pfaffian5 { m: entries, zeros } => {
                if entries.len() != 10 {
                    return Err(bad(format!("skew format with {} entries", entries.len())));
                }
                for &(i, j) in zeros {
                    if i >= j || j > 4 {
                        return Err(bad(format!("zero entry at invalid position ({i}, {j})")));
                    }
                }
            }
            FormatSpec::P2xP2 { u, v } if u.len() != 3 || v.len() != 3 => {
                return Err(bad(format!(
                    "rank format with {}x{} bi-weights",
                    u.len(),
                    v.len()
                )));
            }
            _ => {}
        }
        for &((i, j), var) in &m.placement {
            if var >= m.names.len() {
                return Err(bad(format!("placement at ({i}, {j}) names variable {var}")));
            }
            let ok = match &m.format {
                FormatSpec::Pfaffian5 { zeros, .. } => i < j && j <= 4 && !zeros.contains(&(i, j)),
                FormatSpec::P2xP2 { .. } => i <= 2 && j <= 2,
                _ => false,
            };
            if !ok {
                return Err(bad(format!("placement at ({i}, {j}) does not fit the format")));
            }
        }
        let mut positions = std::collections::BTreeSet::new();
        for &(pos, _) in &m.placement {
            if !positions.insert(pos) {
                return Err(bad(format!("two placements at ({}, {})", pos.0, pos.1)));
            }
        }
        if let Some(c) = &m.center {
            if !m.names.contains(c) {
                return Err(bad(format!("center {c} is not an ambient variable")));
            }
        }
        if let Some(t) = &m.cascade_target {
            if !ids.contains(t.as_str()) {
                return Err(bad(format!("chain target {t} is not in the catalog")));
            }
        }
        if let Some(mx) = m.law.n_max {
            if mx < m.law.n_min {
                return Err(bad(format!("empty parameter range {}..{mx}", m.law.n_min)));
            }
        }
        let hi = m
            .law
            .n_max
            .unwrap_or(i64::MAX)
            .min(m.law.n_min + VALIDATION_WINDOW - 1);
        for n in m.law.n_min..=hi {
            let r = m.r_at(n);
            let ws = m.space_at(r)?;
            format_entry_check(&m.format, &m.placement, &ws, r).map_err(|e| {
                CatalogError::BadModel { id: m.id.clone(), n, detail: e.to_string() }
            })?;
            m.basket_at(r)?;
            match m.deg_k2.value_at(r) {
                None => {
                    return Err(CatalogError::BadModel {
                        id: m.id.clone(),
                        n,
                        detail: "declared degree has a zero denominator".to_string(),
                    })
                }
                Some(v) if !m.deg_k2.known_discrepant && v <= crate::exactmath::rat_int(0) => {
                    return Err(CatalogError::BadModel {
                        id: m.id.clone(),
                        n,
                        detail: format!("declared degree {v} is not positive"),
                    })
                }
                _ => {}
            }
        }
    }
    Ok(())
}

pub fn parse_catalog(text: &str, origin: &str) -> Result<Vec<ModelSpec>, CatalogError> {
    let models: Vec<ModelSpec> = serde_json::from_str(text).map_err(|e| CatalogError::Parse {
        path: origin.to_string(),
        detail: e.to_string(),
    })?;
    validate_catalog(&models)?;
    Ok(models)
}

pub fn load_catalog(path: &std::path::Path) -> Result<Vec<ModelSpec>, CatalogError> {
    let text = std::fs::read_to_string(path).map_err(|e| CatalogError::Io {
        path: path.display().to_string(),
        detail: e.to_string(),
    })?;
    parse_catalog(&text, &path.display().to_string())
}

pub fn catalog_json(models: &[ModelSpec]) -> String {
    serde_json::to_string_pretty(models).expect("catalog serialization cannot fail")
}

fn le(slope: i64, offset: i64) -> LinExpr {
    LinExpr::new(slope, offset)
}

fn cn(offset: i64) -> LinExpr {
    LinExpr::c(offset)
}

fn be(count: usize, order: LinExpr, a: LinExpr, b: LinExpr) -> BasketEntry {
    BasketEntry { count, order, a, b }
}

fn sq(num: &[i64], den: &[i64]) -> DeclaredSquare {
    DeclaredSquare { num: num.to_vec(), den: den.to_vec(), known_discrepant: false }
}

fn sq_flagged(num: &[i64], den: &[i64]) -> DeclaredSquare {
    DeclaredSquare { num: num.to_vec(), den: den.to_vec(), known_discrepant: true }
}

#[allow(clippy::too_many_arguments)]
fn model(
    id: &str,
    weights: Vec<LinExpr>,
    names: &[&str],
    format: FormatSpec,
    law: ParamLaw,
    placement: Vec<((usize, usize), usize)>,
    basket: Vec<BasketEntry>,
    deg_k2: DeclaredSquare,
    h0: i64,
    center: Option<&str>,
    cascade_target: Option<&str>,
) -> ModelSpec {
    ModelSpec {
        id: id.to_string(),
        weights,
        names: names.iter().map(|s| s.to_string()).collect(),
        format,
        law,
        placement,
        basket,
        deg_k2,
        h0,
        center: center.map(|s| s.to_string()),
        cascade_target: cascade_target.map(|s| s.to_string()),
    }
}

fn law(slope: i64, offset: i64, n_min: i64) -> ParamLaw {
    ParamLaw { slope, offset, n_min, n_max: None }
}

fn fixed() -> ParamLaw {
    ParamLaw { slope: 0, offset: 1, n_min: 1, n_max: Some(1) }
}

/// The full builtin catalog. Shorthand inside: q = r-1, s = r+1, t = r+2,
/// u = r+3, v = 2r+1, y = 2r-2, z = 2r-1, w = 3r-2.
pub fn builtin_catalog() -> Vec<ModelSpec> {
    let r = LinExpr::r();
    let q = le(1, -1);
    let s = le(1, 1);
    let t = le(1, 2);
    let u = le(1, 3);
    let v = le(2, 1);
    let y = le(2, -2);
    let z = le(2, -1);
    let w = le(3, -2);
    vec![
        // Codimension 1 and 2 chain targets.
        model(
            "CI11",
            vec![cn(1), cn(1), r, r, z],
            &["a", "b", "c", "d", "e"],
            FormatSpec::Ci { d1: le(2, 0), d2: le(2, 0) },
            law(1, 1, 1),
            vec![],
            vec![be(1, z, cn(1), cn(1))],
            sq(&[4], &[-1, 2]),
            2,
            None,
            None,
        ),
        model(
            "CI12",
            vec![cn(1), cn(2), r, r, z],
            &["z0", "a", "b", "c", "d"],
            FormatSpec::Ci { d1: le(2, 0), d2: le(2, 1) },
            law(2, 1, 1),
            vec![],
            vec![be(2, r, cn(2), q), be(1, z, cn(1), cn(1))],
            sq(&[1, 2], &[0, -1, 2]),
            1,
            Some("z0"),
            Some("HS12"),
        ),
        model(
            "HS12",
            vec![cn(2), r, r, z],
            &["a", "b", "c", "d"],
            FormatSpec::Hypersurface { d: le(4, 0) },
            law(2, 1, 1),
            vec![],
            vec![be(4, r, cn(2), q), be(1, z, cn(1), cn(1))],
            sq(&[2], &[0, -1, 2]),
            0,
            None,
            None,
        ),
        model(
            "CI13",
            vec![cn(2), r, r, z, w],
            &["a", "b", "c", "d", "e"],
            FormatSpec::Ci { d1: le(3, 0), d2: le(4, -2) },
            law(2, 1, 1),
            vec![],
            vec![be(3, r, cn(2), q), be(1, w, r, z)],
            sq(&[3], &[0, -2, 3]),
            0,
            None,
            None,
        ),
        model(
            "CI21",
            vec![cn(1), cn(2), cn(3), r, s],
            &["a", "b", "c", "d", "e"],
            FormatSpec::Ci { d1: le(1, 2), d2: le(1, 3) },
            law(3, 0, 1),
            vec![],
            vec![
                be(1, cn(2), cn(1), cn(1)),
                be(1, cn(3), cn(1), cn(1)),
                be(1, r, cn(1), cn(1)),
                be(1, s, cn(3), r),
            ],
            sq_flagged(&[6, 5, 1], &[0, 6, 6]),
            2,
            None,
            None,
        ),
        model(
            "CI22",
            vec![cn(1), cn(2), cn(3), r, s],
            &["a", "b", "c", "d", "e"],
            FormatSpec::Ci { d1: le(1, 2), d2: le(1, 3) },
            law(3, 1, 1),
            vec![],
            vec![be(1, cn(2), cn(1), cn(1)), be(1, r, cn(1), cn(1)), be(1, s, cn(3), r)],
            sq_flagged(&[6, 5, 1], &[0, 6, 6]),
            2,
            None,
            None,
        ),
        // Codimension 3 skew-format models.
        model(
            "PF11",
            vec![cn(1), cn(1), cn(1), r, r, z],
            &["y0", "a", "b", "c", "d", "e"],
            FormatSpec::Pfaffian5 {
                m: vec![cn(1), cn(1), r, r, cn(1), r, r, r, r, z],
                zeros: vec![],
            },
            law(1, 1, 1),
            vec![((0, 1), 0), ((0, 2), 1), ((1, 2), 2), ((0, 3), 3), ((1, 4), 4), ((3, 4), 5)],
            vec![be(1, z, cn(1), cn(1))],
            sq(&[3, 2], &[-1, 2]),
            3,
            Some("y0"),
            Some("CI11"),
        ),
        model(
            "PF12",
            vec![cn(1), cn(1), cn(2), r, r, z],
            &["y0", "z0", "a", "b", "c", "d"],
            FormatSpec::Pfaffian5 {
                m: vec![cn(1), cn(1), q, r, cn(2), r, s, r, s, z],
                zeros: vec![],
            },
            law(2, 1, 1),
            vec![((0, 1), 0), ((0, 2), 1), ((1, 2), 2), ((1, 3), 3), ((2, 3), 4), ((3, 4), 5)],
            vec![be(1, r, cn(2), q), be(1, z, cn(1), cn(1))],
            sq(&[1, 5, 2], &[0, -2, 4]),
            2,
            Some("y0"),
            Some("CI12"),
        ),
        model(
            "PF13",
            vec![cn(1), cn(2), r, r, z, w],
            &["y0", "a", "b", "c", "d", "e"],
            FormatSpec::Pfaffian5 {
                m: vec![cn(1), cn(2), r, s, r, y, z, z, le(2, 0), w],
                zeros: vec![],
            },
            law(2, 1, 1),
            vec![((0, 1), 0), ((0, 2), 1), ((0, 3), 2), ((1, 2), 3), ((1, 4), 4), ((3, 4), 5)],
            vec![be(1, r, cn(2), q), be(1, w, r, z)],
            sq(&[1, 3], &[0, -2, 3]),
            1,
            Some("y0"),
            Some("CI13"),
        ),
        model(
            "PF14",
            vec![cn(2), r, r, s, t, z],
            &["a", "b", "c", "d", "e", "f"],
            FormatSpec::Pfaffian5 {
                m: vec![cn(2), r, r, s, s, s, t, z, le(2, 0), le(2, 0)],
                zeros: vec![],
            },
            law(2, 1, 1),
            vec![((0, 1), 0), ((0, 2), 1), ((0, 3), 2), ((1, 3), 3), ((1, 4), 4), ((2, 3), 5)],
            vec![be(1, t, cn(2), s), be(1, z, cn(1), cn(1)), be(3, r, cn(2), q)],
            sq(&[3, 4], &[0, -2, 3, 2]),
            0,
            None,
            None,
        ),
        model(
            "PF21",
            vec![cn(1), cn(1), cn(2), cn(3), r, s],
            &["y0", "a", "b", "c", "d", "e"],
            FormatSpec::Pfaffian5 {
                m: vec![cn(1), cn(1), cn(2), q, cn(2), cn(3), r, cn(3), r, s],
                zeros: vec![],
            },
            law(3, 0, 2),
            vec![((0, 1), 0), ((0, 2), 1), ((0, 3), 2), ((1, 3), 3), ((1, 4), 4), ((3, 4), 5)],
            vec![be(1, cn(3), cn(1), cn(1)), be(1, r, cn(1), cn(1)), be(1, s, cn(3), r)],
            sq(&[12, 16, 8], &[0, 3, 3]),
            4,
            Some("y0"),
            Some("CI21"),
        ),
        model(
            "PF22",
            vec![cn(1), cn(1), cn(2), cn(3), r, s],
            &["y0", "a", "b", "c", "d", "e"],
            FormatSpec::Pfaffian5 {
                m: vec![cn(1), cn(1), cn(2), q, cn(2), cn(3), r, cn(3), r, s],
                zeros: vec![],
            },
            law(3, 1, 2),
            vec![((0, 1), 0), ((0, 2), 1), ((0, 3), 2), ((1, 3), 3), ((1, 4), 4), ((3, 4), 5)],
            vec![be(1, r, cn(1), cn(1)), be(1, s, cn(3), r)],
            sq(&[12, 16, 8], &[0, 3, 3]),
            4,
            Some("y0"),
            Some("CI22"),
        ),
        model(
            "PF23",
            vec![cn(1), cn(3), r, s, t, u],
            &["x0", "a", "b", "c", "d", "e"],
            FormatSpec::Pfaffian5 {
                m: vec![cn(1), cn(2), r, s, cn(3), s, t, t, u, v],
                zeros: vec![],
            },
            law(3, 2, 2),
            vec![((0, 1), 0), ((1, 2), 1), ((0, 3), 2), ((1, 3), 3), ((2, 3), 4), ((2, 4), 5)],
            vec![be(1, cn(3), cn(1), cn(1)), be(1, r, cn(1), cn(1)), be(1, u, cn(3), t)],
            sq(&[36, 8], &[0, 9, 3]),
            1,
            None,
            None,
        ),
        // Codimension 4 rank-format models.
        model(
            "P11",
            vec![cn(1), cn(1), cn(1), cn(1), r, r, z],
            &["x0", "y0", "a", "b", "c", "d", "e"],
            FormatSpec::P2xP2 {
                u: vec![cn(0), cn(0), q],
                v: vec![cn(1), cn(1), r],
            },
            law(1, 1, 1),
            vec![
                ((0, 0), 0),
                ((0, 1), 1),
                ((0, 2), 4),
                ((1, 0), 2),
                ((1, 1), 3),
                ((1, 2), 5),
                ((2, 2), 6),
            ],
            vec![be(1, z, cn(1), cn(1))],
            sq_flagged(&[2, 4], &[1, -2]),
            4,
            Some("x0"),
            Some("PF11"),
        ),
        model(
            "P12",
            vec![cn(1), cn(2), r, r, s, t, z],
            &["x0", "a", "b", "c", "d", "e", "f"],
            FormatSpec::P2xP2 {
                u: vec![cn(0), q, r],
                v: vec![cn(1), cn(2), r],
            },
            law(2, 1, 1),
            vec![
                ((0, 0), 0),
                ((0, 1), 1),
                ((0, 2), 2),
                ((1, 0), 3),
                ((1, 1), 4),
                ((1, 2), 6),
                ((2, 1), 5),
            ],
            vec![be(1, r, cn(2), q), be(1, t, cn(2), s), be(1, z, cn(1), cn(1))],
            sq(&[1, 7, 2], &[0, -2, 3, 2]),
            1,
            Some("x0"),
            Some("PF14"),
        ),
        model(
            "P13",
            vec![cn(1), cn(2), cn(2), cn(3), r, r, z],
            &["x0", "a", "b", "c", "d", "e", "f"],
            FormatSpec::P2xP2 {
                u: vec![cn(0), cn(1), q],
                v: vec![cn(1), cn(2), r],
            },
            law(2, 1, 1),
            vec![
                ((0, 0), 0),
                ((0, 1), 1),
                ((0, 2), 4),
                ((1, 0), 2),
                ((1, 1), 3),
                ((2, 0), 5),
                ((2, 2), 6),
            ],
            vec![be(1, cn(3), cn(1), cn(1)), be(1, z, cn(1), cn(1)), be(2, r, cn(2), q)],
            sq(&[3, 2], &[0, -3, 6]),
            1,
            None,
            None,
        ),
        // The fixed low-degree chain, indexed by codimension.
        model(
            "RS3",
            vec![cn(1), cn(1), cn(1), cn(2), cn(2), cn(3)],
            &["x0", "x1", "x2", "y0", "y1", "z"],
            FormatSpec::Pfaffian5 {
                m: vec![cn(1), cn(1), cn(2), cn(2), cn(1), cn(2), cn(2), cn(2), cn(2), cn(3)],
                zeros: vec![],
            },
            fixed(),
            vec![((0, 1), 0), ((0, 2), 1), ((1, 2), 2), ((2, 3), 3), ((2, 4), 4), ((3, 4), 5)],
            vec![be(1, cn(3), cn(1), cn(1))],
            sq(&[7], &[3]),
            3,
            Some("x0"),
            Some("RS2"),
        ),
        model(
            "RS2",
            vec![cn(1), cn(1), cn(2), cn(2), cn(3)],
            &["x1", "x2", "y0", "y1", "z"],
            FormatSpec::Ci { d1: cn(4), d2: cn(4) },
            fixed(),
            vec![],
            vec![be(1, cn(3), cn(1), cn(1))],
            sq(&[4], &[3]),
            2,
            Some("x1"),
            Some("RS1"),
        ),
        model(
            "RS1",
            vec![cn(1), cn(2), cn(3), cn(5)],
            &["x", "y", "z", "w"],
            FormatSpec::Hypersurface { d: cn(10) },
            fixed(),
            vec![],
            vec![be(1, cn(3), cn(1), cn(1))],
            sq(&[1], &[3]),
            1,
            None,
            None,
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::hilbert_numerator;
    use crate::invariants::hilbert_coeffs;

    #[test]
    fn the_builtin_catalog_validates() {
        let cat = builtin_catalog();
        assert_eq!(cat.len(), 19);
        validate_catalog(&cat).unwrap();
    }

    #[test]
    fn the_catalog_survives_a_json_round_trip() {
        let cat = builtin_catalog();
        let text = catalog_json(&cat);
        let back = parse_catalog(&text, "builtin").unwrap();
        assert_eq!(cat, back);
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let mut cat = builtin_catalog();
        cat.push(cat[0].clone());
        match validate_catalog(&cat) {
            Err(CatalogError::DuplicateId(id)) => assert_eq!(id, cat[0].id),
            other => panic!("expected a duplicate id error, got {other:?}"),
        }
    }

    #[test]
    fn instantiation_respects_the_parameter_range() {
        let f = PrimeField::new(10007);
        let cat = builtin_catalog();
        let pf21 = find(&cat, "PF21").unwrap();
        assert!(matches!(
            instantiate(&f, pf21, 1, 3),
            Err(CatalogError::OutOfRange { .. })
        ));
        let rs1 = find(&cat, "RS1").unwrap();
        assert!(matches!(
            instantiate(&f, rs1, 2, 3),
            Err(CatalogError::OutOfRange { .. })
        ));
        assert!(instantiate(&f, pf21, 2, 3).is_ok());
    }

    #[test]
    fn declared_degrees_match_hand_values() {
        let cat = builtin_catalog();
        let at = |id: &str, r: i64| find(&cat, id).unwrap().deg_k2.value_at(r).unwrap();
        assert_eq!(at("CI11", 3), rat(4, 5));
        assert_eq!(at("PF21", 6), rat(22, 7));
        assert_eq!(at("PF23", 8), rat(25, 66));
        assert_eq!(at("RS3", 1), rat(7, 3));
        // The printed value for this row is negative; the flag records that
        // recomputation is expected to disagree.
        assert_eq!(at("P11", 2), rat(-10, 3));
        assert!(find(&cat, "P11").unwrap().deg_k2.known_discrepant);
    }

    #[test]
    fn declared_baskets_normalize_and_merge() {
        let cat = builtin_catalog();
        let ci21 = find(&cat, "CI21").unwrap();
        let b = ci21.basket_at(3).unwrap();
        let s = |order, eig| SingType { order, eig };
        assert_eq!(b, vec![(1, s(2, 1)), (2, s(3, 1)), (1, s(4, 1))]);
    }

    #[test]
    fn skew_members_have_the_socle_complement_degrees() {
        let f = PrimeField::new(10007);
        let cat = builtin_catalog();
        let inst = instantiate(&f, find(&cat, "PF11").unwrap(), 1, 5).unwrap();
        let ring = inst.ws.ring();
        let degs: Vec<i64> = inst
            .eqs
            .iter()
            .map(|e| e.homogeneous_degree(&ring).unwrap().unwrap())
            .collect();
        assert_eq!(degs, vec![4, 4, 4, 3, 3]);
    }

    #[test]
    fn rank_members_have_the_minor_degrees() {
        let f = PrimeField::new(10007);
        let cat = builtin_catalog();
        let inst = instantiate(&f, find(&cat, "P11").unwrap(), 1, 5).unwrap();
        let ring = inst.ws.ring();
        let degs: Vec<i64> = inst
            .eqs
            .iter()
            .map(|e| e.homogeneous_degree(&ring).unwrap().unwrap())
            .collect();
        assert_eq!(degs, vec![2, 3, 3, 3, 4, 4, 3, 4, 4]);
    }

    #[test]
    fn members_are_reproducible_from_the_seed() {
        let f = PrimeField::new(10007);
        let cat = builtin_catalog();
        let spec = find(&cat, "CI12").unwrap();
        let a = instantiate(&f, spec, 2, 11).unwrap();
        let b = instantiate(&f, spec, 2, 11).unwrap();
        let c = instantiate(&f, spec, 2, 12).unwrap();
        assert_eq!(a.eqs, b.eqs);
        assert_ne!(a.eqs, c.eqs);
    }

    #[test]
    fn every_model_reproduces_its_declared_section_count() {
        let two_torsion = ["CI21", "CI22", "PF21", "PF22", "PF23"];
        for m in builtin_catalog() {
            let hi = m.law.n_max.unwrap_or(i64::MAX).min(m.law.n_min + 2);
            for n in m.law.n_min..=hi {
                let r = m.r_at(n);
                let ws = m.space_at(r).unwrap();
                let hd = hilbert_numerator(&m.format, &ws, r).unwrap();
                let want_k = if two_torsion.contains(&m.id.as_str()) { 2 } else { 1 };
                assert_eq!(hd.k, want_k, "{} at n = {n}", m.id);
                let coeffs = hilbert_coeffs(&hd, &ws, hd.k as usize).unwrap();
                assert_eq!(coeffs[hd.k as usize], m.h0, "{} at n = {n}", m.id);
            }
        }
    }
}
