use num_traits::{Signed, Zero};

use super::dd::Bits;
use super::Polytope;
use crate::rational::{self, factorial, QVec, Rational};

/// Exact volume from a pulling triangulation built on the facet-vertex
/// incidences: a face is cut into cones from its smallest vertex over those
/// of its own facets that miss that vertex. The facets of a face `G` are
/// the maximal proper sets among `G ∩ F` over the facets `F` of the
/// polytope, so no further hull computation is needed.
pub(super) fn volume(k: &Polytope) -> Rational {
    if !k.is_full_dimensional() {
        return Rational::zero();
    }
    let n = k.dim();
    let m = k.vertices().len();
    let facets: Vec<Bits> = k
        .facets()
        .expect("full-dimensional")
        .iter()
        .map(|f| {
            let mut b = Bits::new(m);
            f.vertices.iter().for_each(|&i| b.insert(i));
            b
        })
        .collect();
    let mut all = Bits::new(m);
    (0..m).for_each(|i| all.insert(i));

    let mut total = Rational::zero();
    let mut chain = Vec::with_capacity(n + 1);
    pull(k.vertices(), &facets, &all, &mut chain, &mut total);
    total / factorial(n)
}

fn sub_facets(face: &Bits, facets: &[Bits]) -> Vec<Bits> {
    let mut cands: Vec<Bits> = Vec::new();
    for f in facets {
        let c = face.and(f);
        if c.count() == 0 || &c == face || cands.contains(&c) {
            continue;
        }
        cands.push(c);
    }
    cands
        .iter()
        .filter(|c| !cands.iter().any(|o| o != *c && c.is_subset(o)))
        .cloned()
        .collect()
}

fn pull(vertices: &[QVec], facets: &[Bits], face: &Bits, chain: &mut Vec<usize>, total: &mut Rational) {
    let apex = face.iter().next().expect("nonempty face");
    if face.count() == 1 {
        chain.push(apex);
        let base = &vertices[chain[0]];
        let rows: Vec<QVec> = chain[1..].iter().map(|&i| rational::sub(&vertices[i], base)).collect();
        *total += rational::det(&rows).abs();
        chain.pop();
        return;
    }
    chain.push(apex);
    for g in sub_facets(face, facets) {
        if !g.contains(apex) {
            pull(vertices, facets, &g, chain, total);
        }
    }
    chain.pop();
}
