use fixedbitset::FixedBitSet;

use crate::expr::ClassExpression as CE;
use crate::graph::{NodeKind, OntoGraph};

/// Splits a local name into words at camel-case humps, digits runs and
/// punctuation. `MargheritaPizza` has two, `hasURLPrefix2` four.
pub fn name_tokens(name: &str) -> Vec<String> {
    let chars: Vec<char> = name.chars().collect();
    let mut tokens = Vec::new();
    let mut cur = String::new();
    for (i, &c) in chars.iter().enumerate() {
        if !c.is_alphanumeric() {
            if !cur.is_empty() {
                tokens.push(std::mem::take(&mut cur));
            }
            continue;
        }
        if let Some(&prev) = cur.chars().last().as_ref() {
            let next_lower = chars.get(i + 1).is_some_and(|n| n.is_lowercase());
            let boundary = (prev.is_lowercase() && c.is_uppercase())
                || (prev.is_uppercase() && c.is_uppercase() && next_lower)
                || (prev.is_ascii_digit() != c.is_ascii_digit());
            if boundary {
                tokens.push(std::mem::take(&mut cur));
            }
        }
        cur.push(c);
    }
    if !cur.is_empty() {
        tokens.push(cur);
    }
    tokens
}

fn local_name(ce: &CE) -> Option<&str> {
    match ce {
        CE::Thing => Some("Thing"),
        CE::Nothing => Some("Nothing"),
        CE::Atomic(iri) => Some(iri.local_name()),
        _ => None,
    }
}

/// Key-concept scores: `w[0]·density + w[1]·coverage + w[2]·simplicity` for
/// named nodes, 0 for anonymous ones.
///
/// * density: children, properties and instances of the node, relative to
///   the busiest named node;
/// * coverage: share of the hierarchy's leaves below the node;
/// * simplicity: one over the number of words in the local name.
pub fn kce_scores(g: &OntoGraph, weights: [f64; 3]) -> Vec<f64> {
    let n = g.len();
    let bottom = g.bottom();
    let real_children = |i: usize| {
        g.node(i)
            .children
            .iter()
            .filter(|&&c| Some(c) != bottom)
            .count()
    };
    let mut leaves = FixedBitSet::with_capacity(n);
    for i in 0..n {
        if Some(i) != bottom && real_children(i) == 0 {
            leaves.insert(i);
        }
    }
    let leaf_count = leaves.count_ones(..).max(1) as f64;
    let named = |i: usize| g.node(i).kind != NodeKind::Anonymous;
    let raw_density: Vec<f64> = (0..n)
        .map(|i| {
            let node = g.node(i);
            (real_children(i) + node.domain_of.len() + node.instances.len()) as f64
        })
        .collect();
    let max_density = (0..n)
        .filter(|&i| named(i))
        .map(|i| raw_density[i])
        .fold(0.0, f64::max);
    (0..n)
        .map(|i| {
            if !named(i) {
                return 0.0;
            }
            let density = if max_density > 0.0 { raw_density[i] / max_density } else { 0.0 };
            let coverage = g.descendants(i).intersection(&leaves).count() as f64 / leaf_count;
            let words = local_name(&g.node(i).expression)
                .map(|s| name_tokens(s).len())
                .unwrap_or(0);
            let simplicity = if words == 0 { 0.0 } else { 1.0 / words as f64 };
            weights[0] * density + weights[1] * coverage + weights[2] * simplicity
        })
        .collect()
}
