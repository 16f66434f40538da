//! Builds the JSON analysis document for a single function against a class.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use teachset::classes::{
    enumerate_class, essential_bruteforce, is_k_threshold, is_teaching_bruteforce,
    minimal_teaching_sets,
};
use teachset::geometry::{convex_hull_2d, point_in_hull, PolygonKind};
use teachset::grid::flip;
use teachset::teaching::{
    attachable_zeros, delta_region, essential_polytopal, perimeter_bound_check,
};
use teachset::twothreshold::{separation_line, threshold_essential};
use teachset::{ClassKind, ClassSpec, Error, GridFunction, LatticePoint, Result};

use crate::ClassArg;

/// JSON echo of a grid function, matching the core wire format.
#[derive(Serialize, Deserialize, PartialEq, Eq, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct FunctionEcho {
    pub d: usize,
    pub n: usize,
    pub ones: Vec<Vec<i64>>,
}

impl FunctionEcho {
    pub fn of(f: &GridFunction) -> Self {
        FunctionEcho {
            d: f.grid().d(),
            n: f.grid().n(),
            ones: coord_lists(&f.ones_points()),
        }
    }
}

/// Everything the `analyze` subcommand reports about one function.
#[derive(Serialize, Deserialize, PartialEq, Debug)]
#[serde(deny_unknown_fields)]
pub struct AnalysisDocument {
    pub function: FunctionEcho,
    pub class: String,
    /// Hull vertices of the 1-set (empty for the all-zero function).
    pub vertices: Vec<Vec<i64>>,
    /// Zeros attachable to the 1-set without capturing further zeros
    /// (filled for the convex-lattice-set class only).
    pub attachable: Vec<Vec<i64>>,
    /// Grid points gained by relaxing each hull edge by one (filled for
    /// positive-area 1-sets in the convex-lattice-set class only).
    pub delta: Vec<Vec<i64>>,
    /// Essential points with respect to the class.
    pub essential: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j_count: Option<u64>,
    /// Named results of the checks that actually ran for this input.
    pub checks: BTreeMap<String, bool>,
}

pub fn coord_lists(points: &[LatticePoint]) -> Vec<Vec<i64>> {
    points.iter().map(|p| p.coords().to_vec()).collect()
}

fn hull_vertices(f: &GridFunction) -> Result<Vec<LatticePoint>> {
    let ones = f.ones_points();
    if ones.is_empty() {
        return Ok(Vec::new());
    }
    if f.grid().d() == 2 {
        return Ok(convex_hull_2d(&ones)?.vertex_points());
    }
    let mut vertices = Vec::new();
    for (i, p) in ones.iter().enumerate() {
        let others: Vec<LatticePoint> = ones
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q.clone())
            .collect();
        if others.is_empty() || !point_in_hull(p, &others)? {
            vertices.push(p.clone());
        }
    }
    Ok(vertices)
}

fn positive_area(f: &GridFunction) -> Result<bool> {
    let ones = f.ones_points();
    if f.grid().d() != 2 || ones.is_empty() {
        return Ok(false);
    }
    Ok(convex_hull_2d(&ones)?.kind() == PolygonKind::Polygon)
}

/// Run the class-appropriate analysis and collect the document.
pub fn analyze_function(f: &GridFunction, class: &ClassArg) -> Result<AnalysisDocument> {
    let mut doc = AnalysisDocument {
        function: FunctionEcho::of(f),
        class: class.to_string(),
        vertices: Vec::new(),
        attachable: Vec::new(),
        delta: Vec::new(),
        essential: Vec::new(),
        sigma: None,
        j_count: None,
        checks: BTreeMap::new(),
    };
    match class.kind {
        ClassKind::Polytopal => {
            let report = essential_polytopal(f)?;
            doc.checks.insert("in_class".into(), true);
            doc.vertices = coord_lists(&hull_vertices(f)?);
            if f.count_ones() > 0 {
                doc.attachable = coord_lists(&attachable_zeros(f)?);
            }
            if positive_area(f)? {
                doc.delta = coord_lists(&delta_region(f)?);
                let perimeter = perimeter_bound_check(f)?;
                doc.checks.insert(
                    "relaxed_perimeter_within_budget".into(),
                    perimeter.relaxed_ok,
                );
            }
            doc.essential = coord_lists(&report.essential);
            doc.sigma = Some(report.sigma);
            doc.j_count = Some(report.j_count);
        }
        ClassKind::Threshold => {
            let (s0, s1) = threshold_essential(f)?;
            doc.checks.insert("in_class".into(), true);
            doc.vertices = coord_lists(&hull_vertices(f)?);
            let mut essential = [s0, s1].concat();
            essential.sort();
            // a non-constant halfplane function's essential set is its
            // unique minimal teaching set
            doc.sigma = Some(essential.len());
            doc.j_count = Some(1);
            doc.essential = coord_lists(&essential);
            if let (Ok(zero_line), Ok(one_line)) =
                (separation_line(f, false), separation_line(f, true))
            {
                doc.checks.insert(
                    "boundary_lines_parallel_adjacent".into(),
                    zero_line.a1 == -one_line.a1
                        && zero_line.a2 == -one_line.a2
                        && zero_line.a0 + one_line.a0 == -1,
                );
            }
            if f.grid().size() <= 36 {
                let cls = enumerate_class(&ClassSpec::new(ClassKind::Threshold, f.grid()))?;
                doc.checks.insert(
                    "essential_teaches_alone".into(),
                    is_teaching_bruteforce(f, &essential, &cls)?,
                );
            }
        }
        ClassKind::KThreshold(k) if k <= 2 => {
            let cls = enumerate_class(&ClassSpec::new(ClassKind::KThreshold(k), f.grid()))?;
            let essential = essential_bruteforce(f, &cls)?;
            doc.checks.insert("in_class".into(), true);
            doc.vertices = coord_lists(&hull_vertices(f)?);
            let mts = minimal_teaching_sets(f, &cls, 0)?;
            doc.sigma = Some(mts.sigma);
            doc.j_count = Some(mts.j_count);
            doc.checks.insert(
                "essential_teaches_alone".into(),
                is_teaching_bruteforce(f, &essential, &cls)?,
            );
            doc.essential = coord_lists(&essential);
        }
        ClassKind::KThreshold(k) => {
            let thresholds = enumerate_class(&ClassSpec::new(ClassKind::Threshold, f.grid()))?;
            if !is_k_threshold(f, k, &thresholds)? {
                return Err(Error::NotInClass);
            }
            doc.checks.insert("in_class".into(), true);
            doc.vertices = coord_lists(&hull_vertices(f)?);
            let mut essential = Vec::new();
            for p in f.grid().points() {
                if is_k_threshold(&flip(f, &p)?, k, &thresholds)? {
                    essential.push(p);
                }
            }
            doc.essential = coord_lists(&essential);
        }
    }
    Ok(doc)
}

/// Essential points to star in a figure, straight from the document.
pub fn essential_points(doc: &AnalysisDocument) -> Vec<LatticePoint> {
    doc.essential
        .iter()
        .map(|c| LatticePoint::new(c.clone()))
        .collect()
}
