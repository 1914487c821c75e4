//! The desk-scale group corpus: family constructions, binary direct
//! products, the small matrix groups, isomorphism dedupe, and group/report
//! (de)serialization.

use crate::constructions::{
    self, construct_family, ConstructError, FamilySpec, MatrixKind,
};
use crate::group::{
    is_isomorphic_with_budget, Group, GroupError, SearchBudget, CATALOG_MAX_ORDER,
};
use crate::structure::VerificationReport;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("max_order {0} exceeds the catalog bound {CATALOG_MAX_ORDER}")]
    Bound(usize),
    #[error("unsupported group spec schema version {0} (expected 1)")]
    Schema(u32),
    #[error("cayley spec: element 0 must be the identity")]
    IdentityNotZero,
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

/// Cheap isomorphism-class fingerprint; equal keys gate the expensive
/// isomorphism test during dedupe.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantKey {
    pub order: usize,
    pub spectrum: Vec<(usize, usize)>,
    pub center_order: usize,
    pub class_sizes: Vec<(usize, usize)>,
}

impl InvariantKey {
    pub fn of(g: &Group) -> InvariantKey {
        InvariantKey {
            order: g.order(),
            spectrum: g.order_census(),
            center_order: g.center().len(),
            class_sizes: g.conjugacy_classes().size_census(),
        }
    }
}

pub struct CatalogEntry {
    pub group: Group,
    pub provenance: String,
    pub invariant_key: InvariantKey,
}

#[derive(Clone, Copy, Debug)]
pub struct CatalogOptions {
    pub families: bool,
    pub products: bool,
    pub matrix_groups: bool,
    pub dedupe: bool,
}

impl Default for CatalogOptions {
    fn default() -> Self {
        CatalogOptions {
            families: true,
            products: true,
            matrix_groups: true,
            dedupe: true,
        }
    }
}

#[derive(Clone, Debug)]
enum Recipe {
    Family(FamilySpec),
    Matrix(MatrixKind, usize),
    Gl23Tilde,
    Product(FamilySpec, FamilySpec),
}

impl Recipe {
    fn build(&self) -> Result<(Group, String), ConstructError> {
        match self {
            Recipe::Family(spec) => {
                let g = construct_family(spec)?;
                Ok((g, format!("family: {spec:?}")))
            }
            Recipe::Matrix(kind, q) => {
                let g = constructions::matrix_group(*kind, *q)?;
                Ok((g, format!("matrix: {kind:?}({q})")))
            }
            Recipe::Gl23Tilde => Ok((
                constructions::gl2_3_tilde(),
                "matrix: coset construction in SL2(9)".into(),
            )),
            Recipe::Product(a, b) => {
                let ga = construct_family(a)?;
                let gb = construct_family(b)?;
                let g = constructions::direct_product(&ga, &gb)?;
                Ok((g, format!("product: {a:?} x {b:?}")))
            }
        }
    }

    /// Families sort before matrix groups before products, so dedupe keeps
    /// the canonical family representative of each isomorphism class.
    fn priority(&self) -> u8 {
        match self {
            Recipe::Family(_) => 0,
            Recipe::Matrix(..) | Recipe::Gl23Tilde => 1,
            Recipe::Product(..) => 2,
        }
    }
}

fn family_specs(max_order: usize) -> Vec<(FamilySpec, usize)> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        out.push((FamilySpec::Cyclic(n), n));
    }
    for order in (4..=max_order).step_by(2) {
        out.push((FamilySpec::Dihedral(order), order));
    }
    for order in (8..=max_order).step_by(4) {
        out.push((FamilySpec::Dicyclic(order), order));
    }
    for p in [2usize, 3, 5, 7] {
        let mut k = 2u32;
        while let Some(n) = p.checked_pow(k).filter(|&n| n <= max_order) {
            out.push((FamilySpec::ElementaryAbelian(p, k), n));
            k += 1;
        }
    }
    let facts = [1usize, 2, 6, 24, 120];
    for n in 3..=5 {
        if facts[n - 1] <= max_order {
            out.push((FamilySpec::Symmetric(n), facts[n - 1]));
        }
    }
    for n in 4..=5 {
        if facts[n - 1] / 2 <= max_order {
            out.push((FamilySpec::Alternating(n), facts[n - 1] / 2));
        }
    }
    out
}

/// Generates the corpus: all family constructions up to `max_order`, all
/// binary direct products of family groups within the bound, the four
/// matrix groups SL2(3), GL2(3), SL2(5), GL2(5), and the order-48 coset
/// construction. With dedupe on, isomorphic entries collapse to one
/// representative (families preferred). Output is sorted by (order, name).
pub fn generate_catalog(
    max_order: usize,
    options: &CatalogOptions,
) -> Result<Vec<CatalogEntry>, CatalogError> {
    if max_order > CATALOG_MAX_ORDER {
        return Err(CatalogError::Bound(max_order));
    }

    let mut recipes: Vec<Recipe> = Vec::new();
    let families = family_specs(max_order);
    if options.families {
        recipes.extend(families.iter().map(|(f, _)| Recipe::Family(f.clone())));
    }
    if options.matrix_groups {
        for (kind, q, order) in [
            (MatrixKind::Sl2, 3, 24),
            (MatrixKind::Gl2, 3, 48),
            (MatrixKind::Sl2, 5, 120),
            (MatrixKind::Gl2, 5, 480),
        ] {
            if order <= max_order {
                recipes.push(Recipe::Matrix(kind, q));
            }
        }
        if 48 <= max_order {
            recipes.push(Recipe::Gl23Tilde);
        }
    }
    if options.products {
        for (i, (a, na)) in families.iter().enumerate() {
            for (b, nb) in families.iter().skip(i) {
                if na * nb <= max_order {
                    recipes.push(Recipe::Product(a.clone(), b.clone()));
                }
            }
        }
    }

    // Construction parallelizes per recipe; ordering is restored by the
    // deterministic sort below.
    let mut entries: Vec<(u8, CatalogEntry)> = recipes
        .par_iter()
        .map(|recipe| {
            let (group, provenance) = recipe.build()?;
            let invariant_key = InvariantKey::of(&group);
            Ok((
                recipe.priority(),
                CatalogEntry {
                    group,
                    provenance,
                    invariant_key,
                },
            ))
        })
        .collect::<Result<Vec<_>, ConstructError>>()?;

    entries.sort_by(|(pa, a), (pb, b)| {
        (a.group.order(), *pa, a.group.name().to_string()).cmp(&(
            b.group.order(),
            *pb,
            b.group.name().to_string(),
        ))
    });

    let mut kept: Vec<CatalogEntry> = Vec::new();
    if options.dedupe {
        // Scan in sorted order; an entry merges into the first kept entry
        // with the same invariant key that proves isomorphic. Budget
        // exhaustion keeps both sides (no merge without a proof).
        let mut by_key: std::collections::HashMap<InvariantKey, Vec<usize>> =
            std::collections::HashMap::new();
        for (_, entry) in entries {
            let bucket = by_key.entry(entry.invariant_key.clone()).or_default();
            let mut merged = false;
            for &idx in bucket.iter() {
                match is_isomorphic_with_budget(
                    &entry.group,
                    &kept[idx].group,
                    SearchBudget(200_000_000),
                ) {
                    Ok(true) => {
                        kept[idx]
                            .provenance
                            .push_str(&format!(" | isomorphic: {}", entry.group.name()));
                        merged = true;
                        break;
                    }
                    Ok(false) => {}
                    Err(_) => {}
                }
            }
            if !merged {
                bucket.push(kept.len());
                kept.push(entry);
            }
        }
    } else {
        kept = entries.into_iter().map(|(_, e)| e).collect();
    }

    kept.sort_by(|a, b| {
        (a.group.order(), a.group.name().to_string()).cmp(&(b.group.order(), b.group.name().to_string()))
    });
    Ok(kept)
}

/// Serialized group description.
///
/// JSON shape: `{"schema":1,"name":...,"kind":"cayley","n":...,"table":...}`
/// or `{"schema":1,"name":...,"kind":"perm","degree":...,"generators":...}`.
/// Ids are 0-based; a cayley spec must have the identity at element 0.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupSpec {
    pub schema: u32,
    pub name: String,
    #[serde(flatten)]
    pub body: GroupSpecBody,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpecBody {
    Cayley {
        n: usize,
        table: Vec<Vec<usize>>,
    },
    Perm {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
}

/// Decodes a spec through the validating constructors.
pub fn load_group(spec: &GroupSpec) -> Result<Group, CatalogError> {
    if spec.schema != 1 {
        return Err(CatalogError::Schema(spec.schema));
    }
    match &spec.body {
        GroupSpecBody::Cayley { n, table } => {
            if table.len() != *n {
                return Err(CatalogError::Group(GroupError::NotSquare {
                    row: 0,
                    len: table.len(),
                    n: *n,
                }));
            }
            if !table.first().map(|r| r == &(0..*n).collect::<Vec<_>>()).unwrap_or(false) {
                return Err(CatalogError::IdentityNotZero);
            }
            Ok(Group::from_cayley_table(table, spec.name.clone())?)
        }
        GroupSpecBody::Perm { degree, generators } => {
            Ok(Group::from_permutations(*degree, generators, spec.name.clone())?)
        }
    }
}

/// Serializes a group as a cayley spec; `load_group` of the result rebuilds
/// the identical table.
pub fn save_group(g: &Group) -> GroupSpec {
    let n = g.order();
    let table = (0..n)
        .map(|a| (0..n).map(|b| g.mul(a, b)).collect())
        .collect();
    GroupSpec {
        schema: 1,
        name: g.name().to_string(),
        body: GroupSpecBody::Cayley { n, table },
    }
}

pub fn read_group_file(path: &Path) -> Result<Group, CatalogError> {
    let text = std::fs::read_to_string(path).map_err(|source| CatalogError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let spec: GroupSpec = serde_json::from_str(&text)?;
    load_group(&spec)
}

pub fn write_group_file(path: &Path, g: &Group) -> Result<(), CatalogError> {
    let spec = save_group(g);
    let text = serde_json::to_string(&spec)?;
    std::fs::write(path, text).map_err(|source| CatalogError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Jsonl,
    Csv,
}

/// JSONL rendering: one compact JSON object per line, in input order.
pub fn render_jsonl(reports: &[VerificationReport]) -> Result<String, CatalogError> {
    let mut out = String::new();
    for r in reports {
        out.push_str(&serde_json::to_string(r)?);
        out.push('\n');
    }
    Ok(out)
}

/// CSV rendering: flattens per-prime records one row per (group, prime).
pub fn render_csv(reports: &[VerificationReport]) -> String {
    let mut out = String::from(
        "schema,name,order,solvable,p,predicted,case,actual_structural,actual_graph,agrees,k_order,diameter,diam_check_applicable,diam_check_agrees\n",
    );
    for r in reports {
        for c in &r.k_prime_checks {
            let diameter = r
                .diameter
                .map(|d| d.to_string())
                .unwrap_or_else(|| "none".into());
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                r.schema,
                r.name,
                r.order,
                r.solvable,
                c.p,
                c.predicted,
                c.case,
                c.actual_structural,
                c.actual_graph,
                c.agrees,
                r.k_order,
                diameter,
                r.diameter_check.applicable,
                r.diameter_check.agrees,
            ));
        }
    }
    out
}

/// Writes a report file; deterministic bytes for identical inputs.
pub fn write_report(
    reports: &[VerificationReport],
    path: &Path,
    format: ReportFormat,
) -> Result<(), CatalogError> {
    let text = match format {
        ReportFormat::Jsonl => render_jsonl(reports)?,
        ReportFormat::Csv => render_csv(reports),
    };
    std::fs::write(path, text).map_err(|source| CatalogError::Io {
        path: path.display().to_string(),
        source,
    })
}
