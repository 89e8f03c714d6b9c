//! Seeded generator of large ontologies shaped like a cross-domain core
//! vocabulary: a deep, mostly tree-like class hierarchy, properties with
//! domains and ranges, existential restrictions, a few defined classes and
//! GCIs, labels and instances.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

const WORDS: &[&str] = &[
    "Agent", "Person", "Place", "Work", "Organisation", "Event", "Species", "Device", "Building", "Artist",
    "Athlete", "Team", "League", "Album", "Song", "Film", "Book", "Writer", "Politician", "Party", "City",
    "Country", "River", "Mountain", "Island", "Company", "School", "University", "Museum", "Station",
    "Airport", "Road", "Bridge", "Ship", "Aircraft", "Vehicle", "Engine", "Planet", "Star", "Galaxy",
    "Plant", "Animal", "Bird", "Fish", "Insect", "Disease", "Drug", "Protein", "Language", "Religion",
    "Award", "Election", "Battle", "Festival", "Game", "Sport", "Club", "Stadium", "Venue", "Broadcaster",
    "Channel", "Show", "Series", "Episode", "Character", "Painting", "Sculpture", "Monument", "Castle",
    "Church", "Lake", "Volcano", "Cave", "Region", "District", "Village", "Town", "Coach", "Manager",
    "Judge", "Scientist", "Engineer", "Architect", "Musician", "Singer", "Actor", "Director", "Producer",
    "Journal", "Magazine", "Newspaper", "Software", "Website", "Database", "Currency", "Bank", "Market",
];

const VERBS: &[&str] = &[
    "has", "located", "member", "part", "author", "owner", "founded", "based", "produced", "directed",
    "written", "played", "born", "died", "leader", "capital", "operator", "designer", "genre", "label",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SyntheticConfig {
    pub seed: u64,
    pub classes: usize,
    pub object_properties: usize,
    pub data_properties: usize,
    /// Target number of distinct anonymous class expressions at axiom level.
    pub anonymous: usize,
    pub max_depth: usize,
    pub individuals: usize,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        SyntheticConfig {
            seed: 42,
            classes: 500,
            object_properties: 60,
            data_properties: 30,
            anonymous: 50,
            max_depth: 7,
            individuals: 100,
        }
    }
}

impl SyntheticConfig {
    /// About a hundred classes and a dozen anonymous expressions.
    pub fn small(seed: u64) -> Self {
        SyntheticConfig {
            seed,
            classes: 100,
            object_properties: 15,
            data_properties: 5,
            anonymous: 12,
            max_depth: 5,
            individuals: 20,
        }
    }
}

fn unique_names(rng: &mut ChaCha8Rng, count: usize, parts: &[&str], suffix: &str) -> Vec<String> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    let mut attempt = 0usize;
    while out.len() < count {
        attempt += 1;
        let k = if attempt < count * 4 { rng.random_range(1..=2) } else { 3 };
        let mut name: String = (0..k).map(|_| *parts.choose(rng).expect("non-empty")).collect();
        name.push_str(suffix);
        if attempt > count * 20 {
            name.push_str(&out.len().to_string());
        }
        if seen.insert(name.clone()) {
            out.push(name);
        }
    }
    out
}

fn lower_first(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_lowercase().chain(c).collect(),
        None => String::new(),
    }
}

/// Functional-syntax text of a generated ontology. The same config always
/// yields the same text.
pub fn synthetic_ontology(cfg: &SyntheticConfig) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let classes = unique_names(&mut rng, cfg.classes.max(1), WORDS, "");
    let props: Vec<String> = unique_names(&mut rng, cfg.object_properties.max(1), WORDS, "")
        .into_iter()
        .map(|n| format!("{}{n}", VERBS.choose(&mut rng).expect("non-empty")))
        .collect();
    let data_props: Vec<String> = unique_names(&mut rng, cfg.data_properties, WORDS, "Value")
        .iter()
        .map(|n| lower_first(n))
        .collect();

    let mut depth = vec![0usize; classes.len()];
    let mut parents: Vec<Vec<usize>> = vec![Vec::new(); classes.len()];
    for i in 1..classes.len() {
        let choose_parent = |rng: &mut ChaCha8Rng| loop {
            // bias towards recent classes for depth, keep shallow ones reachable
            let p = if rng.random_bool(0.6) {
                rng.random_range(i.saturating_sub(40)..i)
            } else {
                rng.random_range(0..i)
            };
            if depth[p] < cfg.max_depth {
                return p;
            }
        };
        let p = if i < 12 { 0 } else { choose_parent(&mut rng) };
        parents[i].push(p);
        if i > 20 && rng.random_bool(0.08) {
            let q = choose_parent(&mut rng);
            if q != p {
                parents[i].push(q);
            }
        }
        depth[i] = parents[i].iter().map(|&p| depth[p]).max().unwrap_or(0) + 1;
    }

    let mut s = String::new();
    s.push_str("Prefix(:=<http://example.org/core#>)\n");
    s.push_str("Prefix(owl:=<http://www.w3.org/2002/07/owl#>)\n");
    s.push_str("Prefix(rdfs:=<http://www.w3.org/2000/01/rdf-schema#>)\n");
    s.push_str("Prefix(xsd:=<http://www.w3.org/2001/XMLSchema#>)\n");
    s.push_str("Ontology(<http://example.org/core>\n");
    for c in &classes {
        let _ = writeln!(s, "Declaration(Class(:{c}))");
    }
    for p in &props {
        let _ = writeln!(s, "Declaration(ObjectProperty(:{p}))");
    }
    for p in &data_props {
        let _ = writeln!(s, "Declaration(DataProperty(:{p}))");
    }
    for (i, ps) in parents.iter().enumerate() {
        for &p in ps {
            let _ = writeln!(s, "SubClassOf(:{} :{})", classes[i], classes[p]);
        }
    }
    let pick = |rng: &mut ChaCha8Rng| classes[rng.random_range(0..classes.len())].clone();
    for (k, p) in props.iter().enumerate() {
        let _ = writeln!(s, "ObjectPropertyDomain(:{p} :{})", pick(&mut rng));
        let _ = writeln!(s, "ObjectPropertyRange(:{p} :{})", pick(&mut rng));
        if k % 9 == 4 {
            let _ = writeln!(s, "TransitiveObjectProperty(:{p})");
        }
        if k % 7 == 3 {
            let _ = writeln!(s, "FunctionalObjectProperty(:{p})");
        }
        if k % 11 == 5 && k > 0 {
            let _ = writeln!(s, "SubObjectPropertyOf(:{p} :{})", props[k - 1]);
        }
    }
    for p in &data_props {
        let dt = ["xsd:string", "xsd:integer", "xsd:date", "xsd:double"][rng.random_range(0..4)];
        let _ = writeln!(s, "DataPropertyDomain(:{p} :{})", pick(&mut rng));
        let _ = writeln!(s, "DataPropertyRange(:{p} {dt})");
    }

    let mut anon: BTreeSet<String> = BTreeSet::new();
    let mut guard = 0;
    while anon.len() < cfg.anonymous && guard < cfg.anonymous * 50 {
        guard += 1;
        let (c, d, e) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let p = props.choose(&mut rng).expect("non-empty").clone();
        let some = format!("ObjectSomeValuesFrom(:{p} :{d})");
        let (expr, axiom) = match rng.random_range(0..10) {
            0..=4 => (some.clone(), format!("SubClassOf(:{c} {some})")),
            5 => {
                let and = format!("ObjectIntersectionOf(:{d} {some})");
                (and.clone(), format!("EquivalentClasses(:{c} ObjectIntersectionOf(:{e} {some}))"))
            }
            6 | 7 => (some.clone(), format!("SubClassOf({some} :{e})")),
            8 => {
                let and = format!("ObjectIntersectionOf(:{c} :{d})");
                (and.clone(), format!("ObjectPropertyDomain(:{p} {and})"))
            }
            _ => {
                let nested = format!("ObjectSomeValuesFrom(:{p} ObjectSomeValuesFrom(:{} :{e}))", props.choose(&mut rng).expect("non-empty"));
                (nested.clone(), format!("SubClassOf(:{c} {nested})"))
            }
        };
        if anon.insert(expr) {
            let _ = writeln!(s, "{axiom}");
        }
    }
    for i in 0..cfg.individuals {
        let _ = writeln!(s, "Declaration(NamedIndividual(:item{i}))");
        let _ = writeln!(s, "ClassAssertion(:{} :item{i})", pick(&mut rng));
    }
    for c in classes.iter().step_by(5) {
        let _ = writeln!(s, "AnnotationAssertion(rdfs:label :{c} \"{}\"@en)", split_words(c));
    }
    s.push_str(")\n");
    s
}

fn split_words(name: &str) -> String {
    let mut out = String::new();
    for (i, ch) in name.chars().enumerate() {
        if i > 0 && ch.is_uppercase() {
            out.push(' ');
        }
        out.push(ch);
    }
    out
}
