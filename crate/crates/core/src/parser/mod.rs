//! OWL 2 functional-style syntax reader and writer.
//!
//! Only a subset of the language is modelled (see [`crate::ontology::Axiom`]).
//! Axioms that are valid OWL but outside that subset are kept verbatim as
//! [`OpaqueAxiom`]s and reported through [`Ontology::skip_log`]; nothing is
//! dropped silently. Errors are collected across the whole document.

mod lexer;
mod writer;

use std::fmt;

use crate::expr::ClassExpression;
use crate::iri::{Iri, PrefixTable};
use crate::ontology::{Axiom, Characteristic, EntityKind, OpaqueAxiom, Ontology, PropertyRange};

use lexer::{Token, TokenKind};

pub use writer::serialize_document;

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub token: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>, token: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
            token: token.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)?;
        if !self.token.is_empty() {
            write!(f, " (at `{}`)", self.token)?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

/// Parses a functional-syntax document. On failure every error found is returned.
pub fn parse_document(text: &str) -> Result<Ontology, Vec<ParseError>> {
    let (tokens, errors) = lexer::tokenize(text);
    let mut p = Parser {
        src: text,
        tokens,
        pos: 0,
        errors,
        prefixes: PrefixTable::default(),
    };
    let ontology = p.document();
    if p.errors.is_empty() {
        Ok(ontology)
    } else {
        p.errors.sort_by_key(|e| (e.line, e.column));
        p.errors.dedup_by_key(|e| (e.line, e.column));
        Err(p.errors)
    }
}

/// Parses a single class expression, resolving prefixed names with `prefixes`.
pub fn parse_class_expression(
    text: &str,
    prefixes: &PrefixTable,
) -> Result<ClassExpression, Vec<ParseError>> {
    let (tokens, errors) = lexer::tokenize(text);
    let mut p = Parser {
        src: text,
        tokens,
        pos: 0,
        errors,
        prefixes: prefixes.clone(),
    };
    let result = p.class_expression();
    if let Ok(ce) = result {
        if p.errors.is_empty() {
            if matches!(p.peek().kind, TokenKind::Eof) {
                return Ok(ce.canonical());
            }
            p.error_here("expected end of expression");
        }
    } else if let Err(Fail::Unsupported(kind)) = result {
        p.errors.push(ParseError::new(1, 1, format!("unsupported construct {kind}"), ""));
    }
    Err(p.errors)
}

const SUPPORTED_AXIOMS: &[&str] = &[
    "Declaration",
    "SubClassOf",
    "EquivalentClasses",
    "DisjointClasses",
    "ObjectPropertyDomain",
    "ObjectPropertyRange",
    "DataPropertyDomain",
    "DataPropertyRange",
    "SubObjectPropertyOf",
    "ClassAssertion",
    "ObjectPropertyAssertion",
    "FunctionalObjectProperty",
    "TransitiveObjectProperty",
    "InverseObjectProperties",
    "AnnotationAssertion",
];

/// OWL 2 axiom kinds that are recognized but kept opaque.
const OPAQUE_AXIOMS: &[&str] = &[
    "DisjointUnion",
    "SubDataPropertyOf",
    "EquivalentObjectProperties",
    "EquivalentDataProperties",
    "DisjointObjectProperties",
    "DisjointDataProperties",
    "InverseFunctionalObjectProperty",
    "ReflexiveObjectProperty",
    "IrreflexiveObjectProperty",
    "SymmetricObjectProperty",
    "AsymmetricObjectProperty",
    "FunctionalDataProperty",
    "DatatypeDefinition",
    "HasKey",
    "SameIndividual",
    "DifferentIndividuals",
    "NegativeObjectPropertyAssertion",
    "DataPropertyAssertion",
    "NegativeDataPropertyAssertion",
    "SubAnnotationPropertyOf",
    "AnnotationPropertyDomain",
    "AnnotationPropertyRange",
    "DLSafeRule",
];

const OPAQUE_CLASS_CONSTRUCTORS: &[&str] = &[
    "ObjectOneOf",
    "ObjectHasValue",
    "ObjectHasSelf",
    "DataSomeValuesFrom",
    "DataAllValuesFrom",
    "DataHasValue",
    "DataMinCardinality",
    "DataMaxCardinality",
    "DataExactCardinality",
];

/// Why a production did not yield a value.
#[derive(Debug)]
enum Fail {
    /// Recognized OWL that the model does not cover; the axiom becomes opaque.
    Unsupported(String),
    /// A syntax error, already recorded.
    Error,
}

type PResult<T> = Result<T, Fail>;

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<Token>,
    pos: usize,
    errors: Vec<ParseError>,
    prefixes: PrefixTable,
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> Token {
        let tok = self.tokens[self.pos].clone();
        if !matches!(tok.kind, TokenKind::Eof) {
            self.pos += 1;
        }
        tok
    }

    fn error_at(&mut self, tok: &Token, message: impl Into<String>) {
        let token = match tok.kind {
            TokenKind::Eof => String::new(),
            _ => tok.lexeme(self.src).to_string(),
        };
        self.errors
            .push(ParseError::new(tok.line, tok.column, message, token));
    }

    fn error_here(&mut self, expected: &str) {
        let tok = self.peek().clone();
        let found = tok.describe(self.src);
        self.error_at(&tok, format!("expected {expected}, found {found}"));
    }

    fn expect(&mut self, kind: TokenKind, what: &str) -> PResult<Token> {
        if self.peek().kind == kind {
            Ok(self.advance())
        } else {
            self.error_here(what);
            Err(Fail::Error)
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().kind, TokenKind::Keyword(k) if k == kw)
    }

    /// Skips a balanced parenthesized group starting at the current `(`.
    /// Returns the index of the closing token (or Eof).
    fn skip_group(&mut self) -> usize {
        let mut depth = 0usize;
        loop {
            let tok = self.advance();
            match tok.kind {
                TokenKind::LParen => depth += 1,
                TokenKind::RParen => {
                    depth = depth.saturating_sub(1);
                    if depth == 0 {
                        return self.pos - 1;
                    }
                }
                TokenKind::Eof => return self.pos,
                _ => {}
            }
        }
    }

    fn document(&mut self) -> Ontology {
        let mut ontology = Ontology::new();
        let mut seen_header = false;
        loop {
            let tok = self.peek().clone();
            match &tok.kind {
                TokenKind::Eof => break,
                TokenKind::Keyword(k) if k == "Prefix" => {
                    if seen_header {
                        self.error_at(&tok, "prefix declaration after ontology header");
                    }
                    if self.prefix_declaration().is_err() {
                        self.recover_top_level();
                    }
                }
                TokenKind::Keyword(k) if k == "Ontology" => {
                    if seen_header {
                        self.error_at(&tok, "duplicate Ontology header");
                        self.advance();
                        self.skip_group();
                        continue;
                    }
                    seen_header = true;
                    self.ontology_body(&mut ontology);
                }
                _ => {
                    self.error_here("`Prefix(` or `Ontology(`");
                    self.advance();
                    if matches!(self.peek().kind, TokenKind::LParen) {
                        self.skip_group();
                    }
                }
            }
        }
        if !seen_header && self.errors.is_empty() {
            let tok = self.peek().clone();
            self.error_at(&tok, "expected `Ontology(`, found end of input");
        }
        ontology.prefixes = self.prefixes.clone();
        ontology
    }

    fn recover_top_level(&mut self) {
        while !matches!(&self.peek().kind, TokenKind::Eof)
            && !self.is_keyword("Prefix")
            && !self.is_keyword("Ontology")
        {
            self.advance();
        }
    }

    fn prefix_declaration(&mut self) -> PResult<()> {
        self.advance();
        self.expect(TokenKind::LParen, "`(`")?;
        let tok = self.advance();
        let prefix = match tok.kind {
            TokenKind::PrefixedName(p, l) if l.is_empty() => p,
            _ => {
                self.pos -= 1;
                self.error_here("prefix name such as `:` or `ex:`");
                return Err(Fail::Error);
            }
        };
        self.expect(TokenKind::Equals, "`=`")?;
        let tok = self.advance();
        let TokenKind::FullIri(ns) = tok.kind else {
            self.pos -= 1;
            self.error_here("full IRI `<...>`");
            return Err(Fail::Error);
        };
        self.expect(TokenKind::RParen, "`)`")?;
        self.prefixes.insert(prefix, ns);
        Ok(())
    }

    fn ontology_body(&mut self, ontology: &mut Ontology) {
        self.advance();
        if self.expect(TokenKind::LParen, "`(` after Ontology").is_err() {
            return;
        }
        if matches!(self.peek().kind, TokenKind::FullIri(_) | TokenKind::PrefixedName(..)) {
            ontology.iri = self.iri().ok();
            if matches!(self.peek().kind, TokenKind::FullIri(_) | TokenKind::PrefixedName(..)) {
                ontology.version_iri = self.iri().ok();
            }
        }
        loop {
            let tok = self.peek().clone();
            match &tok.kind {
                TokenKind::RParen => {
                    self.advance();
                    return;
                }
                TokenKind::Eof => {
                    self.error_here("`)` closing the ontology");
                    return;
                }
                TokenKind::Keyword(k) if k == "Import" => {
                    self.advance();
                    let res = self
                        .expect(TokenKind::LParen, "`(`")
                        .and_then(|_| self.iri())
                        .and_then(|iri| self.expect(TokenKind::RParen, "`)`").map(|_| iri));
                    match res {
                        Ok(iri) => ontology.imports.push(iri),
                        Err(_) => self.recover_axiom(),
                    }
                }
                TokenKind::Keyword(k) if k == "Annotation" => {
                    // Ontology annotations are not axioms.
                    self.advance();
                    self.skip_group();
                }
                TokenKind::Keyword(k) => {
                    let kind = k.clone();
                    self.axiom(&kind, &tok, ontology);
                }
                _ => {
                    self.error_here("axiom");
                    self.advance();
                }
            }
        }
    }

    /// After an error inside an axiom, skip to the axiom's closing paren.
    fn recover_axiom(&mut self) {
        // The axiom group was opened at `axiom_start`; we no longer know the
        // depth reliably, so scan forward to the next plausible axiom keyword
        // at depth zero relative to here.
        let mut depth = 0i64;
        loop {
            match &self.peek().kind {
                TokenKind::Eof => return,
                TokenKind::LParen => depth += 1,
                TokenKind::RParen => {
                    if depth == 0 {
                        self.advance();
                        return;
                    }
                    depth -= 1;
                }
                _ => {}
            }
            self.advance();
        }
    }

    fn axiom(&mut self, kind: &str, start: &Token, ontology: &mut Ontology) {
        let start_pos = self.pos;
        let supported = SUPPORTED_AXIOMS.contains(&kind);
        if !supported && !OPAQUE_AXIOMS.contains(&kind) {
            self.error_at(start, format!("unknown axiom kind `{kind}`"));
            self.advance();
            if matches!(self.peek().kind, TokenKind::LParen) {
                self.skip_group();
            }
            return;
        }
        let errors_before = self.errors.len();
        let result = if supported {
            self.advance();
            self.supported_axiom(kind)
        } else {
            Err(Fail::Unsupported(kind.to_string()))
        };
        match result {
            Ok(axiom) => ontology.axioms.push(axiom),
            Err(Fail::Unsupported(_)) => {
                self.pos = start_pos + 1;
                let end = self.skip_group();
                if self.errors.len() == errors_before
                    && matches!(self.tokens[end].kind, TokenKind::RParen)
                {
                    let text = self.src[start.start..self.tokens[end].end].to_string();
                    let op = OpaqueAxiom {
                        kind: kind.to_string(),
                        line: start.line,
                        column: start.column,
                        text,
                    };
                    log::info!("{}", op.skip_record());
                    ontology.opaque.push(op);
                } else if matches!(self.tokens[end].kind, TokenKind::Eof) {
                    self.error_here("`)` closing the axiom");
                }
            }
            Err(Fail::Error) => {
                self.pos = start_pos + 1;
                if matches!(self.peek().kind, TokenKind::LParen) {
                    self.skip_group();
                }
            }
        }
    }

    fn supported_axiom(&mut self, kind: &str) -> PResult<Axiom> {
        self.expect(TokenKind::LParen, "`(`")?;
        self.axiom_annotations()?;
        let axiom = match kind {
            "Declaration" => {
                let tok = self.advance();
                let entity = match &tok.kind {
                    TokenKind::Keyword(k) => EntityKind::from_keyword(k),
                    _ => None,
                };
                let Some(entity) = entity else {
                    self.pos -= 1;
                    self.error_here("entity kind such as `Class`");
                    return Err(Fail::Error);
                };
                self.expect(TokenKind::LParen, "`(`")?;
                let iri = self.iri()?;
                self.expect(TokenKind::RParen, "`)`")?;
                Axiom::Declaration(entity, iri)
            }
            "SubClassOf" => {
                let sub = self.class_expression()?;
                let sup = self.class_expression()?;
                Axiom::SubClassOf { sub, sup }
            }
            "EquivalentClasses" | "DisjointClasses" => {
                let members = self.class_expression_list(2)?;
                if kind == "EquivalentClasses" {
                    Axiom::EquivalentClasses(members)
                } else {
                    Axiom::DisjointClasses(members)
                }
            }
            "ObjectPropertyDomain" | "DataPropertyDomain" => {
                let property = self.object_property()?;
                let domain = self.class_expression()?;
                Axiom::PropertyDomain {
                    property,
                    data: kind == "DataPropertyDomain",
                    domain,
                }
            }
            "ObjectPropertyRange" => {
                let property = self.object_property()?;
                let range = self.class_expression()?;
                Axiom::PropertyRange {
                    property,
                    data: false,
                    range: PropertyRange::Class(range),
                }
            }
            "DataPropertyRange" => {
                let property = self.iri()?;
                if let TokenKind::Keyword(k) = &self.peek().kind {
                    return Err(Fail::Unsupported(k.clone()));
                }
                let datatype = self.iri()?;
                Axiom::PropertyRange {
                    property,
                    data: true,
                    range: PropertyRange::Datatype(datatype),
                }
            }
            "SubObjectPropertyOf" => {
                if self.is_keyword("ObjectPropertyChain") {
                    return Err(Fail::Unsupported("ObjectPropertyChain".into()));
                }
                let sub = self.object_property()?;
                let sup = self.object_property()?;
                Axiom::SubPropertyOf { sub, sup }
            }
            "ClassAssertion" => {
                let class = self.class_expression()?;
                let individual = self.individual()?;
                Axiom::ClassAssertion { individual, class }
            }
            "ObjectPropertyAssertion" => {
                let property = self.object_property()?;
                let subject = self.individual()?;
                let object = self.individual()?;
                Axiom::ObjectPropertyAssertion {
                    property,
                    subject,
                    object,
                }
            }
            "FunctionalObjectProperty" | "TransitiveObjectProperty" => {
                let property = self.object_property()?;
                let kind = if kind == "FunctionalObjectProperty" {
                    Characteristic::Functional
                } else {
                    Characteristic::Transitive
                };
                Axiom::PropertyCharacteristic { property, kind }
            }
            "InverseObjectProperties" => {
                let property = self.object_property()?;
                let other = self.object_property()?;
                Axiom::PropertyCharacteristic {
                    property,
                    kind: Characteristic::InverseOf(other),
                }
            }
            "AnnotationAssertion" => self.annotation_assertion()?,
            _ => unreachable!("checked against SUPPORTED_AXIOMS"),
        };
        self.expect(TokenKind::RParen, "`)`")?;
        Ok(axiom)
    }

    fn axiom_annotations(&mut self) -> PResult<()> {
        while self.is_keyword("Annotation") {
            self.advance();
            let end = self.skip_group();
            if matches!(self.tokens[end].kind, TokenKind::Eof) {
                self.error_here("`)` closing the annotation");
                return Err(Fail::Error);
            }
        }
        Ok(())
    }

    fn annotation_assertion(&mut self) -> PResult<Axiom> {
        let property = self.iri()?;
        if property != Iri::rdfs_label() {
            return Err(Fail::Unsupported("AnnotationAssertion".into()));
        }
        if !matches!(
            self.peek().kind,
            TokenKind::FullIri(_) | TokenKind::PrefixedName(..)
        ) {
            return Err(Fail::Unsupported("AnnotationAssertion".into()));
        }
        let subject = self.iri()?;
        let tok = self.advance();
        let TokenKind::Literal(value) = tok.kind else {
            return Err(Fail::Unsupported("AnnotationAssertion".into()));
        };
        let mut lang = None;
        match self.peek().kind.clone() {
            TokenKind::LangTag(tag) => {
                self.advance();
                lang = Some(tag);
            }
            TokenKind::DoubleCaret => {
                self.advance();
                self.iri()?;
            }
            _ => {}
        }
        Ok(Axiom::Label {
            subject,
            value,
            lang,
        })
    }

    fn iri(&mut self) -> PResult<Iri> {
        let tok = self.advance();
        match &tok.kind {
            TokenKind::FullIri(s) => match Iri::new(s) {
                Ok(iri) => Ok(iri),
                Err(e) => {
                    self.error_at(&tok, e.to_string());
                    Err(Fail::Error)
                }
            },
            TokenKind::PrefixedName(prefix, local) => match self.prefixes.expand(prefix, local) {
                Some(Ok(iri)) => Ok(iri),
                Some(Err(e)) => {
                    self.error_at(&tok, e.to_string());
                    Err(Fail::Error)
                }
                None => {
                    self.error_at(&tok, format!("unresolvable prefix `{prefix}:`"));
                    // Keep going so later errors in the axiom are reported too.
                    Ok(Iri::new(format!("urn:unresolved:{local}")).map_err(|_| Fail::Error)?)
                }
            },
            _ => {
                self.pos -= 1;
                self.error_here("IRI");
                Err(Fail::Error)
            }
        }
    }

    fn individual(&mut self) -> PResult<Iri> {
        if let TokenKind::PrefixedName(p, _) = &self.peek().kind {
            if p == "_" {
                return Err(Fail::Unsupported("AnonymousIndividual".into()));
            }
        }
        self.iri()
    }

    fn object_property(&mut self) -> PResult<Iri> {
        if self.is_keyword("ObjectInverseOf") {
            return Err(Fail::Unsupported("ObjectInverseOf".into()));
        }
        self.iri()
    }

    fn class_expression_list(&mut self, min: usize) -> PResult<Vec<ClassExpression>> {
        let first = self.peek().clone();
        let mut out = Vec::new();
        while !matches!(self.peek().kind, TokenKind::RParen | TokenKind::Eof) {
            out.push(self.class_expression()?);
        }
        if out.len() < min {
            if matches!(self.peek().kind, TokenKind::Eof) {
                self.error_here("class expression");
            } else {
                self.error_at(&first, format!("expected at least {min} class expressions"));
            }
            return Err(Fail::Error);
        }
        Ok(out)
    }

    fn class_expression(&mut self) -> PResult<ClassExpression> {
        let tok = self.peek().clone();
        match &tok.kind {
            TokenKind::FullIri(_) | TokenKind::PrefixedName(..) => {
                Ok(ClassExpression::atomic(self.iri()?))
            }
            TokenKind::Keyword(k) => {
                let k = k.clone();
                if OPAQUE_CLASS_CONSTRUCTORS.contains(&k.as_str()) {
                    return Err(Fail::Unsupported(k));
                }
                let ce = match k.as_str() {
                    "ObjectIntersectionOf" | "ObjectUnionOf" => {
                        self.advance();
                        self.expect(TokenKind::LParen, "`(`")?;
                        let ops = self.class_expression_list(2)?;
                        if k == "ObjectIntersectionOf" {
                            ClassExpression::and(ops)
                        } else {
                            ClassExpression::or(ops)
                        }
                    }
                    "ObjectComplementOf" => {
                        self.advance();
                        self.expect(TokenKind::LParen, "`(`")?;
                        ClassExpression::not(self.class_expression()?)
                    }
                    "ObjectSomeValuesFrom" | "ObjectAllValuesFrom" => {
                        self.advance();
                        self.expect(TokenKind::LParen, "`(`")?;
                        let role = self.object_property()?;
                        let filler = self.class_expression()?;
                        if k == "ObjectSomeValuesFrom" {
                            ClassExpression::some(role, filler)
                        } else {
                            ClassExpression::only(role, filler)
                        }
                    }
                    "ObjectMinCardinality" | "ObjectMaxCardinality" | "ObjectExactCardinality" => {
                        self.advance();
                        self.expect(TokenKind::LParen, "`(`")?;
                        let ntok = self.advance();
                        let TokenKind::Integer(n) = ntok.kind else {
                            self.pos -= 1;
                            self.error_here("non-negative integer");
                            return Err(Fail::Error);
                        };
                        let role = self.object_property()?;
                        let filler = if matches!(self.peek().kind, TokenKind::RParen) {
                            ClassExpression::Thing
                        } else {
                            self.class_expression()?
                        };
                        let filler = Box::new(filler);
                        match k.as_str() {
                            "ObjectMinCardinality" => ClassExpression::MinCard(n, role, filler),
                            "ObjectMaxCardinality" => ClassExpression::MaxCard(n, role, filler),
                            _ => ClassExpression::ExactCard(n, role, filler),
                        }
                    }
                    _ => {
                        self.error_at(&tok, format!("unknown class expression constructor `{k}`"));
                        return Err(Fail::Error);
                    }
                };
                self.expect(TokenKind::RParen, "`)`")?;
                Ok(ce)
            }
            _ => {
                self.error_here("class expression");
                Err(Fail::Error)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::ClassExpression as CE;

    fn x(local: &str) -> Iri {
        Iri::new(format!("http://x#{local}")).unwrap()
    }

    #[test]
    fn single_subclass_axiom() {
        let o = parse_document("Prefix(:=<http://x#>) Ontology( SubClassOf(:A :B) )").unwrap();
        assert_eq!(
            o.axioms,
            vec![Axiom::SubClassOf {
                sub: CE::Atomic(x("A")),
                sup: CE::Atomic(x("B")),
            }]
        );
    }

    #[test]
    fn gci_with_intersection_on_the_left() {
        let doc = "Prefix(:=<http://x#>)\nOntology( SubClassOf(ObjectIntersectionOf(:A ObjectSomeValuesFrom(:S owl:Thing)) :C) )";
        let o = parse_document(doc).unwrap();
        let Axiom::SubClassOf { sub, sup } = &o.axioms[0] else {
            panic!()
        };
        assert_eq!(*sub, CE::and([CE::Atomic(x("A")), CE::some(x("S"), CE::Thing)]));
        assert_eq!(*sup, CE::Atomic(x("C")));
        assert!(o.axioms[0].is_gci());
    }

    #[test]
    fn truncated_input_reports_expected_token() {
        let errs = parse_document("Ontology( SubClassOf(:A").unwrap_err();
        // `:` is undeclared here, so the prefix error comes first.
        let last = errs.last().unwrap();
        assert_eq!((last.line, last.column), (1, 24));
        assert!(last.message.contains("expected class expression"), "{last}");
        assert!(last.message.contains("end of input"));

        let errs = parse_document("Prefix(:=<http://x#>)\nOntology( SubClassOf(:A").unwrap_err();
        assert_eq!(errs.len(), 1);
        assert_eq!((errs[0].line, errs[0].column), (2, 24));
    }

    #[test]
    fn collects_all_errors() {
        let doc = "Prefix(:=<http://x#>)\nOntology(\n SubClassOf(:A )\n SubClassOf(zz:B :C)\n Frobnicate(:A)\n)";
        let errs = parse_document(doc).unwrap_err();
        assert_eq!(errs.len(), 3, "{errs:?}");
        assert_eq!(errs[0].line, 3);
        assert!(errs[1].message.contains("unresolvable prefix"));
        assert_eq!(errs[1].token, "zz:B");
        assert!(errs[2].message.contains("unknown axiom kind"));
    }

    #[test]
    fn duplicate_ontology_header() {
        let errs = parse_document("Ontology() Ontology()").unwrap_err();
        assert_eq!(errs.len(), 1);
        assert_eq!(errs[0].column, 12);
        assert!(errs[0].message.contains("duplicate"));
    }

    #[test]
    fn unsupported_axioms_become_skip_records() {
        let doc = "Prefix(:=<http://x#>)\nOntology(\n SymmetricObjectProperty(:r)\n SubClassOf(:A ObjectHasValue(:r :i))\n AnnotationAssertion(rdfs:comment :A \"c\")\n AnnotationAssertion(rdfs:label :A \"Aye\"@en)\n)";
        let o = parse_document(doc).unwrap();
        assert_eq!(o.axioms.len(), 1);
        assert_eq!(o.opaque.len(), 3);
        assert_eq!(
            o.skip_log(),
            "SKIP SymmetricObjectProperty 3:2\nSKIP SubClassOf 4:2\nSKIP AnnotationAssertion 5:2\n"
        );
        assert_eq!(o.opaque[1].text, "SubClassOf(:A ObjectHasValue(:r :i))");
        assert_eq!(o.labels_of(&x("A")), vec!["Aye"]);
    }

    #[test]
    fn axiom_annotations_and_cardinalities() {
        let doc = "Prefix(:=<http://x#>)\nOntology(<http://x> \n SubClassOf(Annotation(rdfs:comment \"why\") :A ObjectMinCardinality(2 :r))\n DataPropertyRange(:name xsd:string)\n InverseObjectProperties(:r :s)\n)";
        let o = parse_document(doc).unwrap();
        assert_eq!(o.iri, Some(Iri::new("http://x").unwrap()));
        assert_eq!(
            o.axioms[0],
            Axiom::SubClassOf {
                sub: CE::Atomic(x("A")),
                sup: CE::MinCard(2, x("r"), Box::new(CE::Thing)),
            }
        );
        assert!(matches!(&o.axioms[1], Axiom::PropertyRange { range: PropertyRange::Datatype(d), .. } if d.compact() == "xsd:string"));
        assert_eq!(o.axioms[2].kind(), "InverseObjectProperties");
    }

    #[test]
    fn parses_standalone_expressions() {
        let mut prefixes = PrefixTable::default();
        prefixes.insert("", "http://x#");
        let ce = parse_class_expression("ObjectSomeValuesFrom(:r :B)", &prefixes).unwrap();
        assert_eq!(ce, CE::some(x("r"), CE::Atomic(x("B"))));
        assert!(parse_class_expression(":A :B", &prefixes).is_err());
    }
}
