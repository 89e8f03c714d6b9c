//! Test oracles and random ontology generators shared by the integration
//! tests. Deliberately naive: nothing here is indexed or incremental.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use ontoview_core::graph::harvest_expressions;
use ontoview_core::layout::Layered;
use ontoview_core::ontology::{Axiom, Characteristic, PropertyRange};
use ontoview_core::reasoner::{Reasoner, ReasonerError};
use ontoview_core::{ClassExpression as CE, Iri, Ontology};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn iri(local: &str) -> Iri {
    Iri::new(format!("http://x#{local}")).unwrap()
}

pub fn atom(local: &str) -> CE {
    CE::Atomic(iri(local))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

/// Subsumption by the textbook completion procedure: a subsumer set per
/// subexpression of the input, rules re-applied to every concept until
/// nothing changes.
pub struct Oracle {
    closure: Vec<CE>,
    index: HashMap<CE, usize>,
    sets: Vec<BTreeSet<usize>>,
    ranges: BTreeMap<Iri, BTreeSet<CE>>,
}

impl Oracle {
    pub fn new(o: &Ontology, queries: &[CE]) -> Oracle {
        // Role hierarchy, reflexive-transitive, by repeated composition.
        let mut roles: BTreeSet<Iri> = BTreeSet::new();
        let mut told_sub: BTreeSet<(Iri, Iri)> = BTreeSet::new();
        let mut transitive: BTreeSet<Iri> = BTreeSet::new();
        let mut told_ranges: Vec<(Iri, CE)> = Vec::new();
        for ax in &o.axioms {
            match ax {
                Axiom::SubPropertyOf { sub, sup } => {
                    told_sub.insert((sub.clone(), sup.clone()));
                }
                Axiom::PropertyCharacteristic {
                    property,
                    kind: Characteristic::Transitive,
                } => {
                    transitive.insert(property.clone());
                }
                Axiom::PropertyRange {
                    property,
                    data: false,
                    range: PropertyRange::Class(c),
                } => told_ranges.push((property.clone(), c.clone())),
                _ => {}
            }
        }
        let sig = o.signature();
        roles.extend(sig.object_properties.iter().cloned());
        for q in queries {
            q.roles_in(&mut roles);
        }
        let mut role_sub: BTreeSet<(Iri, Iri)> = roles.iter().map(|r| (r.clone(), r.clone())).collect();
        role_sub.extend(told_sub.iter().cloned());
        loop {
            let mut added = Vec::new();
            for (a, b) in &role_sub {
                for (c, d) in &role_sub {
                    if b == c && !role_sub.contains(&(a.clone(), d.clone())) {
                        added.push((a.clone(), d.clone()));
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            role_sub.extend(added);
        }
        let mut ranges: BTreeMap<Iri, BTreeSet<CE>> = BTreeMap::new();
        for (r, s) in &role_sub {
            for (p, c) in &told_ranges {
                if p == s {
                    ranges.entry(r.clone()).or_default().insert(c.clone());
                }
            }
        }

        let mut oracle = Oracle {
            closure: Vec::new(),
            index: HashMap::new(),
            sets: Vec::new(),
            ranges,
        };
        let mut gcis: Vec<(CE, CE)> = Vec::new();
        let push = |a: &CE, b: &CE, gcis: &mut Vec<(CE, CE)>| gcis.push((a.clone(), b.clone()));
        for ax in &o.axioms {
            match ax {
                Axiom::SubClassOf { sub, sup } => push(sub, sup, &mut gcis),
                Axiom::EquivalentClasses(ms) => {
                    for a in ms {
                        for b in ms {
                            push(a, b, &mut gcis);
                        }
                    }
                }
                Axiom::DisjointClasses(ms) => {
                    for (i, a) in ms.iter().enumerate() {
                        for b in &ms[i + 1..] {
                            push(&CE::and([a.clone(), b.clone()]), &CE::Nothing, &mut gcis);
                        }
                    }
                }
                Axiom::PropertyDomain {
                    property,
                    data: false,
                    domain,
                } => push(&CE::some(property.clone(), CE::Thing), domain, &mut gcis),
                _ => {}
            }
        }
        let gcis: Vec<(CE, CE)> = gcis
            .iter()
            .map(|(a, b)| (oracle.transform(a), oracle.transform(b)))
            .collect();

        oracle.add(&CE::Thing);
        oracle.add(&CE::Nothing);
        for c in &sig.classes {
            oracle.add(&CE::Atomic(c.clone()));
        }
        for (a, b) in &gcis {
            oracle.add(a);
            oracle.add(b);
        }
        for q in queries {
            let t = oracle.transform(q);
            oracle.add(&t);
        }
        // Disjunction operands are told subsumees of the disjunction.
        let mut told: Vec<(usize, usize)> = gcis
            .iter()
            .map(|(a, b)| (oracle.index[a], oracle.index[b]))
            .collect();
        for (i, c) in oracle.closure.iter().enumerate() {
            if let CE::Or(ops) = c {
                for op in ops {
                    told.push((oracle.index[op], i));
                }
            }
        }

        let n = oracle.closure.len();
        let top = oracle.index[&CE::Thing];
        let bottom = oracle.index[&CE::Nothing];
        let roles: Vec<Iri> = roles.into_iter().collect();
        let role_ix = |r: &Iri| roles.iter().position(|x| x == r).unwrap();
        let nr = roles.len();
        let below = |a: usize, b: usize| role_sub.contains(&(roles[a].clone(), roles[b].clone()));
        let role_le: Vec<Vec<bool>> = (0..nr).map(|a| (0..nr).map(|b| below(a, b)).collect()).collect();
        let trans: Vec<usize> = (0..nr).filter(|&t| transitive.contains(&roles[t])).collect();
        let ands: Vec<(usize, Vec<usize>)> = oracle
            .closure
            .iter()
            .enumerate()
            .filter_map(|(k, c)| match c {
                CE::And(ops) => Some((k, ops.iter().map(|o| oracle.index[o]).collect())),
                _ => None,
            })
            .collect();
        let exists: Vec<(usize, usize, usize)> = oracle
            .closure
            .iter()
            .enumerate()
            .filter_map(|(k, c)| match c {
                CE::Exists(r, f) => Some((k, role_ix(r), oracle.index[&**f])),
                _ => None,
            })
            .collect();

        // sub[i][d]: d is a subsumer of i. link[i][r][j]: i -r-> j.
        let mut sub = vec![vec![false; n]; n];
        for (i, row) in sub.iter_mut().enumerate() {
            row[i] = true;
            row[top] = true;
        }
        let mut link = vec![vec![vec![false; n]; nr]; n];
        loop {
            let mut changed = false;
            let mut set = |m: &mut Vec<Vec<bool>>, i: usize, d: usize| {
                if !m[i][d] {
                    m[i][d] = true;
                    changed = true;
                }
            };
            for i in 0..n {
                for &(a, b) in &told {
                    if sub[i][a] {
                        set(&mut sub, i, b);
                    }
                }
                for (k, ops) in &ands {
                    if sub[i][*k] {
                        for &op in ops {
                            set(&mut sub, i, op);
                        }
                    }
                    if ops.iter().all(|&op| sub[i][op]) {
                        set(&mut sub, i, *k);
                    }
                }
                for &(k, r, f) in &exists {
                    if sub[i][k] {
                        set(&mut link[i], r, f);
                    }
                }
                for y in 0..n {
                    for r in 0..nr {
                        if !link[i][r][y] {
                            continue;
                        }
                        if sub[y][bottom] {
                            set(&mut sub, i, bottom);
                        }
                        for &(k, s, e) in &exists {
                            if role_le[r][s] && sub[y][e] {
                                set(&mut sub, i, k);
                            }
                        }
                        // i -r-> y -r2-> z with r, r2 ⊑* t transitive: i -t-> z.
                        for &t in &trans {
                            if !role_le[r][t] {
                                continue;
                            }
                            for z in 0..n {
                                if (0..nr).any(|r2| link[y][r2][z] && role_le[r2][t]) {
                                    set(&mut link[i], t, z);
                                }
                            }
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        oracle.sets = sub
            .iter()
            .map(|row| (0..n).filter(|&d| row[d]).collect())
            .collect();
        oracle
    }

    /// Folds role ranges into existential fillers.
    fn transform(&self, ce: &CE) -> CE {
        match ce {
            CE::And(ops) => CE::and(ops.iter().map(|o| self.transform(o))),
            CE::Or(ops) => CE::or(ops.iter().map(|o| self.transform(o))),
            CE::Exists(r, f) => {
                let mut parts = vec![self.transform(f)];
                if let Some(rs) = self.ranges.get(r) {
                    parts.extend(rs.iter().map(|c| self.transform(c)));
                }
                CE::some(r.clone(), CE::and(parts))
            }
            other => other.clone(),
        }
    }

    fn add(&mut self, ce: &CE) {
        if self.index.contains_key(ce) {
            return;
        }
        match ce {
            CE::And(ops) | CE::Or(ops) => ops.iter().for_each(|o| self.add(o)),
            CE::Exists(_, f) => self.add(f),
            _ => {}
        }
        self.index.insert(ce.clone(), self.closure.len());
        self.closure.push(ce.clone());
    }

    pub fn is_inconsistent(&self) -> bool {
        self.subsumes(&CE::Thing, &CE::Nothing)
    }

    /// `sub ⊑ sup`; both must be named or among the queries.
    pub fn subsumes(&self, sub: &CE, sup: &CE) -> bool {
        let a = self.index[&self.transform(sub)];
        let b = self.index[&self.transform(sup)];
        let bottom = self.index[&CE::Nothing];
        a == b
            || sup == &CE::Thing
            || self.sets[a].contains(&b)
            || self.sets[a].contains(&bottom)
    }
}

/// Equivalence classes and transitive reduction of the oracle's
/// subsumption order over `exprs` (Thing is added). Unsatisfiable
/// expressions are grouped with Nothing, which sits below every leaf; the
/// Nothing group is omitted when only Nothing itself is in it.
/// Edges are (child members, parent members).
pub fn oracle_hierarchy(oracle: &Oracle, exprs: &[CE]) -> BTreeSet<(BTreeSet<CE>, BTreeSet<CE>)> {
    let mut all: Vec<CE> = vec![CE::Thing];
    for e in exprs {
        if !all.contains(e) && *e != CE::Nothing {
            all.push(e.clone());
        }
    }
    let unsat: BTreeSet<CE> = all
        .iter()
        .filter(|e| oracle.subsumes(e, &CE::Nothing))
        .cloned()
        .collect();
    let sat: Vec<&CE> = all.iter().filter(|e| !unsat.contains(*e)).collect();
    let mut groups: Vec<BTreeSet<CE>> = Vec::new();
    for e in &sat {
        if let Some(g) = groups
            .iter_mut()
            .find(|g| {
                let f = g.iter().next().unwrap();
                oracle.subsumes(e, f) && oracle.subsumes(f, e)
            })
        {
            g.insert((*e).clone());
        } else {
            groups.push([(*e).clone()].into_iter().collect());
        }
    }
    let rep = |g: &BTreeSet<CE>| g.iter().next().unwrap().clone();
    let below = |a: usize, b: usize| a != b && oracle.subsumes(&rep(&groups[a]), &rep(&groups[b]));
    let mut edges = BTreeSet::new();
    let n = groups.len();
    let mut has_child = vec![false; n];
    for a in 0..n {
        for b in 0..n {
            if below(a, b) && !(0..n).any(|c| c != a && c != b && below(a, c) && below(c, b)) {
                edges.insert((groups[a].clone(), groups[b].clone()));
                has_child[b] = true;
            }
        }
    }
    if !unsat.is_empty() {
        let mut bottom = unsat;
        bottom.insert(CE::Nothing);
        for a in 0..n {
            if !has_child[a] {
                edges.insert((bottom.clone(), groups[a].clone()));
            }
        }
    }
    edges
}

/// Same shape as [`oracle_hierarchy`], read off a built graph.
pub fn graph_hierarchy(g: &ontoview_core::graph::OntoGraph) -> BTreeSet<(BTreeSet<CE>, BTreeSet<CE>)> {
    let members = |i: usize| -> BTreeSet<CE> { g.node(i).members.iter().cloned().collect() };
    g.isa_edges()
        .into_iter()
        .map(|(c, p)| (members(c), members(p)))
        .collect()
}

#[derive(Debug, Clone, Copy)]
pub struct GenConfig {
    pub classes: usize,
    pub roles: usize,
    pub axioms: usize,
    pub depth: u32,
    /// Also generate `or`, `not` and `only`.
    pub non_el: bool,
    /// Role inclusions, transitivity, domains and ranges.
    pub role_axioms: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            classes: 30,
            roles: 4,
            axioms: 60,
            depth: 2,
            non_el: false,
            role_axioms: true,
        }
    }
}

pub fn random_expr<R: Rng>(rng: &mut R, cfg: &GenConfig, depth: u32) -> CE {
    let class = |rng: &mut R| atom(&format!("C{}", rng.random_range(0..cfg.classes)));
    let role = |rng: &mut R| iri(&format!("r{}", rng.random_range(0..cfg.roles)));
    if depth == 0 {
        return match rng.random_range(0..40) {
            0 => CE::Thing,
            _ => class(rng),
        };
    }
    let roll = rng.random_range(0..100);
    match roll {
        0..=44 => class(rng),
        45..=64 => {
            let k = rng.random_range(2..=3);
            CE::and((0..k).map(|_| random_expr(rng, cfg, depth - 1)))
        }
        65..=89 => CE::some(role(rng), random_expr(rng, cfg, depth - 1)),
        90..=93 if cfg.non_el => CE::or((0..2).map(|_| random_expr(rng, cfg, depth - 1))),
        94..=96 if cfg.non_el => CE::not(random_expr(rng, cfg, depth - 1)),
        97..=99 if cfg.non_el => CE::only(role(rng), random_expr(rng, cfg, depth - 1)),
        _ => class(rng),
    }
}

pub fn random_ontology(seed: u64, cfg: &GenConfig) -> Ontology {
    let mut rng = rng(seed);
    let mut axioms = Vec::new();
    let n_axioms = rng.random_range(cfg.axioms / 2..=cfg.axioms);
    let role = |rng: &mut ChaCha8Rng| iri(&format!("r{}", rng.random_range(0..cfg.roles)));
    for _ in 0..n_axioms {
        let roll = rng.random_range(0..100);
        let ax = match roll {
            0..=59 => {
                let (sd, pd) = if rng.random_bool(0.5) { (0, cfg.depth) } else { (cfg.depth, rng.random_range(0..=cfg.depth)) };
                Axiom::SubClassOf {
                    sub: random_expr(&mut rng, cfg, sd),
                    sup: random_expr(&mut rng, cfg, pd),
                }
            }
            60..=74 => Axiom::EquivalentClasses(vec![
                random_expr(&mut rng, cfg, 0),
                random_expr(&mut rng, cfg, cfg.depth),
            ]),
            75..=77 => Axiom::DisjointClasses(vec![
                random_expr(&mut rng, cfg, 0),
                random_expr(&mut rng, cfg, 0),
            ]),
            78..=84 if cfg.role_axioms => Axiom::SubPropertyOf {
                sub: role(&mut rng),
                sup: role(&mut rng),
            },
            85..=89 if cfg.role_axioms => Axiom::PropertyCharacteristic {
                property: role(&mut rng),
                kind: Characteristic::Transitive,
            },
            90..=94 if cfg.role_axioms => Axiom::PropertyDomain {
                property: role(&mut rng),
                data: false,
                domain: random_expr(&mut rng, cfg, 1),
            },
            95..=99 if cfg.role_axioms => Axiom::PropertyRange {
                property: role(&mut rng),
                data: false,
                range: PropertyRange::Class(random_expr(&mut rng, cfg, 0)),
            },
            _ => Axiom::SubClassOf {
                sub: random_expr(&mut rng, cfg, 0),
                sup: random_expr(&mut rng, cfg, 1),
            },
        };
        axioms.push(ax);
    }
    Ontology::with_axioms(axioms)
}

/// Named classes of the signature plus Thing and Nothing.
pub fn named(o: &Ontology) -> Vec<CE> {
    let mut v: Vec<CE> = o.signature().classes.into_iter().map(CE::Atomic).collect();
    v.push(CE::Thing);
    v.push(CE::Nothing);
    v
}

/// Disagreements between the reasoner and the oracle on named classes and
/// harvested expressions; `None` when both report inconsistency.
pub fn discrepancies(o: &Ontology) -> Option<Vec<String>> {
    let exprs = harvest_expressions(o);
    let oracle = Oracle::new(o, &exprs);
    let reasoner = match Reasoner::classify(o) {
        Err(ReasonerError::Inconsistent) => {
            return if oracle.is_inconsistent() {
                None
            } else {
                Some(vec!["reasoner reports inconsistency, oracle does not".into()])
            }
        }
        Err(e) => panic!("{e}"),
        Ok(r) => r,
    };
    let mut out = Vec::new();
    if oracle.is_inconsistent() {
        out.push("oracle reports inconsistency, reasoner does not".into());
    }
    let mut all = named(o);
    all.extend(exprs);
    for a in &all {
        for b in &all {
            let got = reasoner.is_subsumed(a, b).unwrap();
            let want = oracle.subsumes(a, b);
            if got != want {
                out.push(format!("{} ⊑ {}: reasoner {got}, oracle {want}", a.render(), b.render()));
            }
        }
    }
    Some(out)
}

/// Power iteration with an explicit column-stochastic matrix, dangling
/// columns filled uniformly, run for a fixed large number of rounds.
pub fn dense_pagerank(n: usize, edges: &[(usize, usize)], d: f64) -> Vec<f64> {
    let mut m = vec![vec![0.0; n]; n];
    let mut out = vec![0usize; n];
    for &(a, _) in edges {
        out[a] += 1;
    }
    for &(a, b) in edges {
        m[b][a] += 1.0 / out[a] as f64;
    }
    for (j, &o) in out.iter().enumerate() {
        if o == 0 {
            for row in m.iter_mut() {
                row[j] = 1.0 / n as f64;
            }
        }
    }
    let mut r = vec![1.0 / n as f64; n];
    for _ in 0..3000 {
        r = (0..n)
            .map(|i| (1.0 - d) / n as f64 + d * (0..n).map(|j| m[i][j] * r[j]).sum::<f64>())
            .collect();
    }
    r
}

pub fn random_graph(seed: u64) -> (usize, Vec<(usize, usize)>) {
    let mut r = rng(seed);
    let n = r.random_range(1..40);
    let m = r.random_range(0..n * 3);
    let edges = (0..m)
        .map(|_| (r.random_range(0..n), r.random_range(0..n)))
        .filter(|(a, b)| a != b)
        .collect();
    (n, edges)
}

/// Random DAG over `0..n`: node i > 0 picks up to three parents below it.
pub fn random_dag(seed: u64, max_nodes: usize) -> Vec<Vec<usize>> {
    let mut r = rng(seed);
    let n = r.random_range(1..=max_nodes);
    (0..n)
        .map(|i| {
            if i == 0 {
                return Vec::new();
            }
            let k = r.random_range(1..=3.min(i));
            let mut ps: Vec<usize> = (0..k).map(|_| r.random_range(0..i)).collect();
            ps.sort_unstable();
            ps.dedup();
            ps
        })
        .collect()
}

pub fn level_by_recursion(parents: &[Vec<usize>], i: usize, memo: &mut HashMap<usize, usize>) -> usize {
    if let Some(&l) = memo.get(&i) {
        return l;
    }
    let l = parents[i]
        .iter()
        .map(|&p| level_by_recursion(parents, p, memo) + 1)
        .max()
        .unwrap_or(0);
    memo.insert(i, l);
    l
}

/// Counts crossing segment pairs between every two adjacent levels by
/// checking each pair of segments.
pub fn brute_crossings(l: &Layered, order: &[Vec<usize>]) -> u64 {
    let mut pos = vec![0usize; l.len()];
    for layer in order {
        for (i, &v) in layer.iter().enumerate() {
            pos[v] = i;
        }
    }
    let mut total = 0;
    for layer in order {
        let segs: Vec<(usize, usize)> = layer
            .iter()
            .flat_map(|&u| l.down[u].iter().map(move |&w| (u, w)))
            .map(|(u, w)| (pos[u], pos[w]))
            .collect();
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                let (a, b) = (segs[i], segs[j]);
                if (a.0 < b.0 && a.1 > b.1) || (a.0 > b.0 && a.1 < b.1) {
                    total += 1;
                }
            }
        }
    }
    total
}
