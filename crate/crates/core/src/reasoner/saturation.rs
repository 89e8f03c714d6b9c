//! Indexed forward chaining of the EL completion rules.
//!
//! State is one subsumer set per atom ("context") plus role links between
//! contexts. Rules can be added after saturation; they are applied to the
//! existing state so extending a saturated rule set is incremental.

use std::collections::{HashMap, HashSet};

use super::normalize::{Atom, Role, Rule, RuleSet, BOTTOM, TOP};

#[derive(Debug, Clone)]
enum Item {
    Subsumer(Atom, Atom),
    Link(Atom, Role, Atom),
}

#[derive(Debug, Clone, Default)]
pub(crate) struct Saturation {
    told: Vec<Vec<Atom>>,
    conj_rules: Vec<(Vec<Atom>, Atom)>,
    conj_by_operand: Vec<Vec<usize>>,
    exists_right: Vec<Vec<(Role, Atom)>>,
    exists_left: HashMap<(Role, Atom), Vec<Atom>>,

    subsumers: Vec<HashSet<Atom>>,
    links: HashSet<(Atom, Role, Atom)>,
    succ: Vec<Vec<(Role, Atom)>>,
    pred: Vec<Vec<(Role, Atom)>>,

    queue: Vec<Item>,
    rules_seen: usize,
}

impl Saturation {
    /// Brings the state up to date with every rule and atom in `rs`.
    pub fn sync(&mut self, rs: &RuleSet) {
        let n = rs.atom_count();
        while self.subsumers.len() < n {
            let a = self.subsumers.len() as Atom;
            self.told.push(Vec::new());
            self.conj_by_operand.push(Vec::new());
            self.exists_right.push(Vec::new());
            self.subsumers.push(HashSet::new());
            self.succ.push(Vec::new());
            self.pred.push(Vec::new());
            self.queue.push(Item::Subsumer(a, a));
            self.queue.push(Item::Subsumer(a, TOP));
        }
        for rule in &rs.rules[self.rules_seen..] {
            self.add_rule(rule);
        }
        self.rules_seen = rs.rules.len();
        self.run(rs);
    }

    fn add_rule(&mut self, rule: &Rule) {
        match rule {
            Rule::Sub(a, b) => {
                self.told[*a as usize].push(*b);
                for (x, subs) in self.subsumers.iter().enumerate() {
                    if subs.contains(a) {
                        self.queue.push(Item::Subsumer(x as Atom, *b));
                    }
                }
            }
            Rule::Conj(ops, b) => {
                let idx = self.conj_rules.len();
                self.conj_rules.push((ops.clone(), *b));
                for op in ops {
                    self.conj_by_operand[*op as usize].push(idx);
                }
                for (x, subs) in self.subsumers.iter().enumerate() {
                    if ops.iter().all(|o| subs.contains(o)) {
                        self.queue.push(Item::Subsumer(x as Atom, *b));
                    }
                }
            }
            Rule::ExistsRight(a, r, b) => {
                self.exists_right[*a as usize].push((*r, *b));
                for (x, subs) in self.subsumers.iter().enumerate() {
                    if subs.contains(a) {
                        self.queue.push(Item::Link(x as Atom, *r, *b));
                    }
                }
            }
            Rule::ExistsLeft(r, a, b) => {
                self.exists_left.entry((*r, *a)).or_default().push(*b);
                for &(x, s, y) in &self.links {
                    if s == *r && self.subsumers[y as usize].contains(a) {
                        self.queue.push(Item::Subsumer(x, *b));
                    }
                }
            }
        }
    }

    fn run(&mut self, rs: &RuleSet) {
        while let Some(item) = self.queue.pop() {
            match item {
                Item::Subsumer(x, a) => self.process_subsumer(x, a),
                Item::Link(x, r, y) => self.process_link(rs, x, r, y),
            }
        }
    }

    fn process_subsumer(&mut self, x: Atom, a: Atom) {
        if !self.subsumers[x as usize].insert(a) {
            return;
        }
        let (xi, ai) = (x as usize, a as usize);
        if a == BOTTOM {
            for &(_, w) in &self.pred[xi] {
                self.queue.push(Item::Subsumer(w, BOTTOM));
            }
        }
        for &b in &self.told[ai] {
            self.queue.push(Item::Subsumer(x, b));
        }
        for &idx in &self.conj_by_operand[ai] {
            let (ops, b) = &self.conj_rules[idx];
            if ops.iter().all(|o| self.subsumers[xi].contains(o)) {
                self.queue.push(Item::Subsumer(x, *b));
            }
        }
        for &(r, b) in &self.exists_right[ai] {
            self.queue.push(Item::Link(x, r, b));
        }
        for &(s, w) in &self.pred[xi] {
            if let Some(bs) = self.exists_left.get(&(s, a)) {
                for &b in bs {
                    self.queue.push(Item::Subsumer(w, b));
                }
            }
        }
    }

    fn process_link(&mut self, rs: &RuleSet, x: Atom, r: Role, y: Atom) {
        for &s in &rs.roles.supers[r as usize] {
            if !self.links.insert((x, s, y)) {
                continue;
            }
            self.succ[x as usize].push((s, y));
            self.pred[y as usize].push((s, x));
            for &a in &self.subsumers[y as usize] {
                if let Some(bs) = self.exists_left.get(&(s, a)) {
                    for &b in bs {
                        self.queue.push(Item::Subsumer(x, b));
                    }
                }
            }
            if self.subsumers[y as usize].contains(&BOTTOM) {
                self.queue.push(Item::Subsumer(x, BOTTOM));
            }
            if rs.roles.transitive[s as usize] {
                for &(s2, z) in &self.succ[y as usize] {
                    if s2 == s {
                        self.queue.push(Item::Link(x, s, z));
                    }
                }
                for &(s2, w) in &self.pred[x as usize] {
                    if s2 == s {
                        self.queue.push(Item::Link(w, s, y));
                    }
                }
            }
        }
    }

    pub fn subsumers(&self, a: Atom) -> &HashSet<Atom> {
        &self.subsumers[a as usize]
    }

    pub fn is_unsatisfiable(&self, a: Atom) -> bool {
        self.subsumers[a as usize].contains(&BOTTOM)
    }

    pub fn links(&self) -> usize {
        self.links.len()
    }
}
