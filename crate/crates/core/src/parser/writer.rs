use std::fmt::Write as _;

use crate::iri::PrefixTable;
use crate::ontology::{Axiom, Characteristic, Ontology, PropertyRange};

/// Writes the ontology as functional-style syntax. Entities are written as
/// full IRIs; prefix declarations are emitted so that retained opaque axioms
/// (which keep their original text) still resolve.
pub fn serialize_document(o: &Ontology) -> String {
    let mut out = String::new();
    let defaults = PrefixTable::default();
    for (prefix, ns) in o.prefixes.iter() {
        if defaults.get(prefix) != Some(ns) {
            let _ = writeln!(out, "Prefix({prefix}:=<{ns}>)");
        }
    }
    out.push_str("Ontology(");
    if let Some(iri) = &o.iri {
        let _ = write!(out, "<{iri}>");
        if let Some(v) = &o.version_iri {
            let _ = write!(out, " <{v}>");
        }
    }
    out.push('\n');
    for import in &o.imports {
        let _ = writeln!(out, "Import(<{import}>)");
    }
    for axiom in &o.axioms {
        write_axiom(&mut out, axiom);
        out.push('\n');
    }
    for op in &o.opaque {
        out.push_str(&op.text);
        out.push('\n');
    }
    out.push_str(")\n");
    out
}

fn write_axiom(out: &mut String, axiom: &Axiom) {
    out.push_str(axiom.kind());
    out.push('(');
    match axiom {
        Axiom::Declaration(kind, iri) => {
            let _ = write!(out, "{}(<{iri}>)", kind.keyword());
        }
        Axiom::SubClassOf { sub, sup } => {
            sub.write_functional(out);
            out.push(' ');
            sup.write_functional(out);
        }
        Axiom::EquivalentClasses(ms) | Axiom::DisjointClasses(ms) => {
            for (i, m) in ms.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                m.write_functional(out);
            }
        }
        Axiom::PropertyDomain {
            property, domain, ..
        } => {
            let _ = write!(out, "<{property}> ");
            domain.write_functional(out);
        }
        Axiom::PropertyRange {
            property, range, ..
        } => {
            let _ = write!(out, "<{property}> ");
            match range {
                PropertyRange::Class(c) => c.write_functional(out),
                PropertyRange::Datatype(d) => {
                    let _ = write!(out, "<{d}>");
                }
            }
        }
        Axiom::SubPropertyOf { sub, sup } => {
            let _ = write!(out, "<{sub}> <{sup}>");
        }
        Axiom::ClassAssertion { individual, class } => {
            class.write_functional(out);
            let _ = write!(out, " <{individual}>");
        }
        Axiom::ObjectPropertyAssertion {
            property,
            subject,
            object,
        } => {
            let _ = write!(out, "<{property}> <{subject}> <{object}>");
        }
        Axiom::PropertyCharacteristic { property, kind } => {
            let _ = write!(out, "<{property}>");
            if let Characteristic::InverseOf(other) = kind {
                let _ = write!(out, " <{other}>");
            }
        }
        Axiom::Label {
            subject,
            value,
            lang,
        } => {
            let escaped = value.replace('\\', "\\\\").replace('"', "\\\"");
            let _ = write!(
                out,
                "<{}> <{subject}> \"{escaped}\"",
                crate::iri::Iri::rdfs_label()
            );
            if let Some(lang) = lang {
                let _ = write!(out, "@{lang}");
            }
        }
    }
    out.push(')');
}
