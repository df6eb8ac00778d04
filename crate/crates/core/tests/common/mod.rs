#![allow(dead_code)]

use std::sync::Arc;

use flatdim::homological::ModulePresentation;
use flatdim::matrix::PolyMatrix;
use flatdim::QuotientRing;

pub struct CorpusRing {
    pub name: &'static str,
    pub ring: Arc<QuotientRing>,
    pub modules: Vec<(String, ModulePresentation)>,
}

fn ring(p: u64, vars: &[&str], ideal: &[&str]) -> Arc<QuotientRing> {
    QuotientRing::parse(p, vars, ideal).unwrap()
}

fn cyclic(r: &Arc<QuotientRing>, gens: &[&str]) -> (String, ModulePresentation) {
    (format!("R/({})", gens.join(", ")), ModulePresentation::parse_cyclic(r, gens).unwrap())
}

fn standard(r: &Arc<QuotientRing>) -> Vec<(String, ModulePresentation)> {
    vec![("k".into(), ModulePresentation::residue_field(r)), ("R".into(), ModulePresentation::free(r, vec![0]))]
}

/// Rings and modules used across the integration and acceptance tests:
/// regular rings, hypersurfaces, non-Cohen-Macaulay rings and Artinian
/// rings, in characteristics 2 and 3.
pub fn corpus() -> Vec<CorpusRing> {
    let mut out = Vec::new();
    let mut add = |name: &'static str, r: Arc<QuotientRing>, extra: Vec<(String, ModulePresentation)>| {
        let mut modules = standard(&r);
        modules.extend(extra);
        out.push(CorpusRing { name, ring: r, modules });
    };

    let r = ring(2, &["x", "y"], &[]);
    let two = PolyMatrix::parse(r.ambient(), &[vec!["x"], vec!["y"]]).unwrap();
    let rank_two = ("coker(x; y)".to_string(), ModulePresentation::new(&r, vec![0, 0], two).unwrap());
    add("F2[x,y]", r.clone(), vec![cyclic(&r, &["x"]), cyclic(&r, &["x^2", "x*y"]), rank_two]);

    let r = ring(3, &["x", "y", "z"], &[]);
    add("F3[x,y,z]", r.clone(), vec![cyclic(&r, &["x*y - z^2"])]);

    let r = ring(2, &["x", "y"], &["x*y"]);
    add("F2[x,y]/(xy)", r.clone(), vec![cyclic(&r, &["x"]), cyclic(&r, &["y"]), cyclic(&r, &["x + y"])]);

    let r = ring(2, &["x", "y"], &["x^2"]);
    add("F2[x,y]/(x^2)", r.clone(), vec![cyclic(&r, &["x"]), cyclic(&r, &["y"])]);

    let r = ring(2, &["x", "y"], &["x^2", "x*y"]);
    add("F2[x,y]/(x^2,xy)", r.clone(), vec![cyclic(&r, &["y"])]);

    let r = ring(2, &["x"], &["x^3"]);
    add("F2[x]/(x^3)", r.clone(), vec![cyclic(&r, &["x^2"])]);

    let r = ring(3, &["x", "y", "z"], &["x*y - z^2"]);
    add("F3[x,y,z]/(xy-z^2)", r.clone(), vec![cyclic(&r, &["x"]), cyclic(&r, &["x", "z"])]);

    let r = ring(2, &["x", "y", "z"], &["x*y", "x*z"]);
    add("F2[x,y,z]/(xy,xz)", r.clone(), vec![cyclic(&r, &["x"])]);

    let r = ring(3, &["x", "y"], &["x^2", "y^2"]);
    add("F3[x,y]/(x^2,y^2)", r.clone(), vec![cyclic(&r, &["x"])]);

    let r = ring(2, &["x", "y", "z"], &["x^2 + y*z"]);
    add("F2[x,y,z]/(x^2+yz)", r.clone(), vec![cyclic(&r, &["y"])]);

    out
}

/// Every `(ring name, module name, module)` in the corpus.
pub fn corpus_modules() -> Vec<(&'static str, String, ModulePresentation)> {
    corpus().into_iter().flat_map(|c| c.modules.into_iter().map(move |(n, m)| (c.name, n, m))).collect()
}
