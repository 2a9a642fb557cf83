//! Resolution of a [`Document`] into groups, fields, curves and data.
//!
//! Sections are resolved in order; a reference must name an earlier
//! section of a suitable kind.

use std::collections::HashMap;
use std::sync::Arc;

use descent_core::braid::BraidWord;
use descent_core::cohomology::GModule;
use descent_core::curves::{DatumMaps, DescentDatum, Monomial, MonomialMap, SuperCurve, WCurve};
use descent_core::cyclo::{
    parse_element, verify_aut_group, CycloElem, FieldAut, KummerElem, KummerField,
};
use descent_core::extension::{CoverModel, ExtensionModel};
use descent_core::permgroup::{FinGroup, GroupHom, Perm, PermGroup};

use crate::document::{Diagnostic, Document, Entry, Kind, Section};

/// A permutation group with the generator names visible in its scope.
#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub group: PermGroup,
    /// Own generators first, then the parent's scope.
    pub names: Vec<(String, Perm)>,
    pub parent: Option<String>,
}

impl NamedGroup {
    /// Name of a generator of this group, if it has one.
    pub fn name_of(&self, p: &Perm) -> Option<&str> {
        self.names
            .iter()
            .find(|(_, q)| q == p)
            .map(|(n, _)| n.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct ExtDef {
    pub ext: ExtensionModel,
    pub e_name: String,
    pub p_name: String,
    /// `(H, R)` when the extension carries a cover.
    pub cover: Option<CoverModel>,
}

#[derive(Clone, Debug)]
pub struct HomDef {
    pub hom: GroupHom,
    pub source: String,
}

#[derive(Clone, Debug)]
pub struct SectionDef {
    pub extension: String,
    /// Aligned with the quotient's element indices.
    pub elements: Vec<Perm>,
}

#[derive(Clone, Debug)]
pub enum CurveDef {
    Weierstrass(WCurve),
    Superelliptic(SuperCurve),
}

impl CurveDef {
    pub fn field(&self) -> &Arc<KummerField> {
        match self {
            CurveDef::Weierstrass(e) => e.field(),
            CurveDef::Superelliptic(x) => x.field(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DatumDef {
    pub datum: DescentDatum,
    pub curve: String,
    /// Display name per group element, as products of the named generators.
    pub labels: Vec<String>,
}

#[derive(Clone, Debug)]
pub enum Obj {
    Group(NamedGroup),
    Extension(Box<ExtDef>),
    Hom(HomDef),
    Module(GModule),
    Section(SectionDef),
    Field(Arc<KummerField>),
    Aut(FieldAut),
    Curve(CurveDef),
    Datum(DatumDef),
    Braid(BraidWord),
}

#[derive(Clone, Debug)]
pub struct Model {
    pub doc: Document,
    objs: Vec<(String, Obj)>,
    index: HashMap<String, usize>,
}

/// Parse and resolve; the document is returned only if every section resolves.
pub fn parse_document(text: &str) -> Result<Document, Diagnostic> {
    Ok(Model::parse(text)?.doc)
}

impl Model {
    pub fn parse(text: &str) -> Result<Model, Diagnostic> {
        Model::build(Document::parse_syntax(text)?)
    }

    pub fn build(doc: Document) -> Result<Model, Diagnostic> {
        let mut m = Model {
            doc: Document::default(),
            objs: Vec::new(),
            index: HashMap::new(),
        };
        for s in &doc.sections {
            let obj = m.resolve(s, &doc)?;
            m.index.insert(s.name.clone(), m.objs.len());
            m.objs.push((s.name.clone(), obj));
        }
        m.doc = doc;
        Ok(m)
    }

    pub fn get(&self, name: &str) -> Option<&Obj> {
        self.index.get(name).map(|&i| &self.objs[i].1)
    }

    pub fn objects(&self) -> impl Iterator<Item = (&str, &Obj)> {
        self.objs.iter().map(|(n, o)| (n.as_str(), o))
    }

    pub fn group(&self, name: &str) -> Option<&NamedGroup> {
        match self.get(name) {
            Some(Obj::Group(g)) => Some(g),
            _ => None,
        }
    }

    fn lookup(
        &self,
        e: &Entry,
        name: &str,
        doc: &Document,
        want: &[Kind],
    ) -> Result<&Obj, Diagnostic> {
        let wanted = want
            .iter()
            .map(|k| k.as_str())
            .collect::<Vec<_>>()
            .join(" or ");
        match self.index.get(name) {
            Some(&i) => {
                let kind = doc.sections[i].kind;
                if want.contains(&kind) {
                    Ok(&self.objs[i].1)
                } else {
                    Err(e.diag(format!("'{name}' is a {kind} section, expected {wanted}")))
                }
            }
            None if doc.sections.iter().any(|s| s.name == name) => {
                Err(e.diag(format!("reference to '{name}' before its definition")))
            }
            None => Err(e.diag(format!(
                "undefined reference '{name}' (expected a {wanted} section)"
            ))),
        }
    }

    fn group_ref(&self, e: &Entry, doc: &Document) -> Result<&NamedGroup, Diagnostic> {
        match self.lookup(e, &e.value, doc, &[Kind::Group, Kind::Subgroup])? {
            Obj::Group(g) => Ok(g),
            _ => unreachable!("kind checked"),
        }
    }

    fn field_ref(&self, e: &Entry, doc: &Document) -> Result<&Arc<KummerField>, Diagnostic> {
        match self.lookup(e, &e.value, doc, &[Kind::Field])? {
            Obj::Field(f) => Ok(f),
            _ => unreachable!("kind checked"),
        }
    }

    fn resolve(&self, s: &Section, doc: &Document) -> Result<Obj, Diagnostic> {
        match s.kind {
            Kind::Group => resolve_group(s, None).map(Obj::Group),
            Kind::Subgroup => {
                let parent = self.group_ref(s.require("parent")?, doc)?;
                resolve_group(s, Some(parent)).map(Obj::Group)
            }
            Kind::Extension => self
                .resolve_extension(s, doc)
                .map(|x| Obj::Extension(Box::new(x))),
            Kind::Hom => self.resolve_hom(s, doc).map(Obj::Hom),
            Kind::Module => self.resolve_module(s, doc).map(Obj::Module),
            Kind::Section => self.resolve_section(s, doc).map(Obj::Section),
            Kind::Field => resolve_field(s).map(Obj::Field),
            Kind::Aut => {
                let fe = s.require("field")?;
                let field = self.field_ref(fe, doc)?;
                let ze = s.require("zeta")?;
                let k: i64 = number(ze)?;
                let aut = match s.get("t") {
                    Some(te) => FieldAut::new(field, k, element(te, &te.value, 0, field)?),
                    None if field.exponent() > 1 => FieldAut::new(field, k, KummerElem::t(field)),
                    None => FieldAut::cyclotomic(field, k),
                };
                aut.map(Obj::Aut)
                    .map_err(|err| s.get("t").unwrap_or(ze).diag(err.to_string()))
            }
            Kind::Curve => self.resolve_curve(s, doc).map(Obj::Curve),
            Kind::Datum => self.resolve_datum(s, doc).map(Obj::Datum),
            Kind::Braid => {
                let strands: usize = number(s.require("strands")?)?;
                let we = s.require("word")?;
                BraidWord::parse(strands, &we.value)
                    .map(Obj::Braid)
                    .map_err(|err| we.diag(err.to_string()))
            }
        }
    }

    fn resolve_extension(&self, s: &Section, doc: &Document) -> Result<ExtDef, Diagnostic> {
        let (ee, pe) = (s.require("E")?, s.require("P")?);
        let e = self.group_ref(ee, doc)?;
        let p = self.group_ref(pe, doc)?;
        if p.group.degree() != e.group.degree() || !p.group.is_subgroup_of(&e.group) {
            return Err(pe.diag(format!("{} is not a subgroup of {}", pe.value, ee.value)));
        }
        let ext = ExtensionModel::new(e.group.clone(), p.group.clone())
            .map_err(|err| pe.diag(err.to_string()))?;
        let cover = match (s.get("H"), s.get("R")) {
            (None, None) => None,
            (None, Some(re)) => return Err(re.diag("R given without H")),
            (Some(he), re) => {
                let h = self.group_ref(he, doc)?.group.clone();
                if h.degree() != e.group.degree() || !h.is_subgroup_of(&e.group) {
                    return Err(he.diag(format!("{} is not a subgroup of {}", he.value, ee.value)));
                }
                let r = match re {
                    Some(re) => {
                        let r = self.group_ref(re, doc)?.group.clone();
                        if r.degree() != e.group.degree() || !r.is_subgroup_of(&p.group) {
                            return Err(
                                re.diag(format!("{} is not a subgroup of {}", re.value, pe.value))
                            );
                        }
                        r
                    }
                    None => h.intersection(&p.group),
                };
                Some(CoverModel::new(ext.clone(), h, r).map_err(|err| he.diag(err.to_string()))?)
            }
        };
        Ok(ExtDef {
            ext,
            e_name: ee.value.clone(),
            p_name: pe.value.clone(),
            cover,
        })
    }

    fn resolve_hom(&self, s: &Section, doc: &Document) -> Result<HomDef, Diagnostic> {
        let se = s.require("source")?;
        let src = self.group_ref(se, doc)?;
        let d: usize = number(s.require("target")?)?;
        if d == 0 {
            return Err(s.require("target")?.diag("target degree must be positive"));
        }
        let gens = src.group.gens();
        let mut images: Vec<Option<Perm>> = vec![None; gens.len()];
        for e in s.all("image") {
            let (lhs, rhs) = split_once(e, "->")?;
            let x = group_element(e, lhs.0, lhs.1, src)?;
            let slot = gens.iter().position(|g| *g == x).ok_or_else(|| {
                e.diag_at(lhs.1, format!("{x} is not a generator of {}", se.value))
            })?;
            if images[slot].is_some() {
                return Err(e.diag_at(lhs.1, format!("second image for the generator {x}")));
            }
            images[slot] = Some(cycles(e, rhs.0, rhs.1, d)?);
        }
        let images = images
            .into_iter()
            .zip(gens)
            .map(|(img, g)| {
                img.ok_or_else(|| {
                    s.diag(format!("hom {} has no image for the generator {g}", s.name))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let hom = GroupHom::new(&src.group, d, images)
            .map_err(|err| s.diag(format!("hom {}: {err}", s.name)))?;
        Ok(HomDef {
            hom,
            source: se.value.clone(),
        })
    }

    fn resolve_module(&self, s: &Section, doc: &Document) -> Result<GModule, Diagnostic> {
        let qe = s.require("acting")?;
        let me = s.require("coefficients")?;
        let q = self.group_ref(qe, doc)?;
        let m = self.group_ref(me, doc)?;
        if !m.group.is_abelian() {
            return Err(me.diag(format!("{} is not abelian", me.value)));
        }
        let qf = FinGroup::from_perm_group(&q.group);
        let mf = FinGroup::from_perm_group(&m.group);
        let nm = m.group.order();
        // images of M's generators under each generator of Q
        let mut gen_images: Vec<Vec<usize>> = q
            .group
            .gens()
            .iter()
            .map(|_| {
                m.group
                    .gens()
                    .iter()
                    .map(|x| m.group.position(x).expect("generator"))
                    .collect()
            })
            .collect();
        for e in s.all("act") {
            let (lhs, rhs) = split_once(e, "->")?;
            let (u, x) = split_once_in(e, lhs, ":")?;
            let u = group_element(e, u.0, u.1, q)?;
            let ui = q
                .group
                .gens()
                .iter()
                .position(|g| *g == u)
                .ok_or_else(|| e.diag(format!("{u} is not a generator of {}", qe.value)))?;
            let xp = group_element(e, x.0, x.1, m)?;
            let xi = m
                .group
                .gens()
                .iter()
                .position(|g| *g == xp)
                .ok_or_else(|| {
                    e.diag_at(x.1, format!("{xp} is not a generator of {}", me.value))
                })?;
            let y = group_element(e, rhs.0, rhs.1, m)?;
            gen_images[ui][xi] = m
                .group
                .position(&y)
                .ok_or_else(|| e.diag_at(rhs.1, format!("{y} is not in {}", me.value)))?;
        }
        let autos = gen_images
            .iter()
            .enumerate()
            .map(|(i, imgs)| {
                mf.extend_gen_images(&mf, imgs).ok_or_else(|| {
                    s.diag(format!(
                        "generator {} does not act by a homomorphism",
                        q.group.gens()[i]
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        // breadth-first over Q: (u·g)·x = u·(g·x)
        let mut act: Vec<Option<Vec<usize>>> = vec![None; qf.order()];
        act[0] = Some((0..nm).collect());
        let mut queue = vec![0usize];
        let mut i = 0;
        while i < queue.len() {
            let u = queue[i];
            i += 1;
            for (gi, &g) in qf.gens().iter().enumerate() {
                let ug = qf.mul(u, g);
                let cur = act[u].clone().expect("visited");
                let img: Vec<usize> = (0..nm).map(|x| cur[autos[gi][x]]).collect();
                match &act[ug] {
                    None => {
                        act[ug] = Some(img);
                        queue.push(ug);
                    }
                    Some(prev) if *prev != img => {
                        return Err(s.diag(format!(
                            "the action table of {} does not define an action",
                            s.name
                        )))
                    }
                    Some(_) => {}
                }
            }
        }
        let act: Vec<Vec<usize>> = act
            .into_iter()
            .map(|a| a.expect("Q is generated by its generators"))
            .collect();
        GModule::new(qf, mf, act).map_err(|err| s.diag(format!("module {}: {err}", s.name)))
    }

    fn resolve_section(&self, s: &Section, doc: &Document) -> Result<SectionDef, Diagnostic> {
        let xe = s.require("extension")?;
        let ext = match self.lookup(xe, &xe.value, doc, &[Kind::Extension])? {
            Obj::Extension(x) => x,
            _ => unreachable!("kind checked"),
        };
        let e = self.group(&ext.e_name).expect("resolved");
        let q = ext.ext.q().order();
        let mut elements: Vec<Option<Perm>> = vec![None; q];
        for en in s.all("element") {
            let x = group_element(en, &en.value, 0, e)?;
            let u = ext
                .ext
                .project(&x)
                .ok_or_else(|| en.diag(format!("{x} is not in {}", ext.e_name)))?;
            if elements[u].is_some() {
                return Err(en.diag(format!(
                    "{x} lies in a coset that already has a representative"
                )));
            }
            if u == 0 && !x.is_identity() {
                return Err(en.diag("the representative of P itself must be the identity"));
            }
            elements[u] = Some(x);
        }
        if elements[0].is_none() {
            elements[0] = Some(Perm::identity(e.group.degree()));
        }
        let missing = elements.iter().filter(|x| x.is_none()).count();
        if missing > 0 {
            return Err(s.diag(format!("section {} misses {missing} of {q} cosets", s.name)));
        }
        Ok(SectionDef {
            extension: xe.value.clone(),
            elements: elements.into_iter().map(Option::unwrap).collect(),
        })
    }

    fn resolve_curve(&self, s: &Section, doc: &Document) -> Result<CurveDef, Diagnostic> {
        let field = self.field_ref(s.require("field")?, doc)?;
        let weier = s.get("a").is_some() || s.get("b").is_some();
        if weier {
            if let Some(e) = ["n", "q", "root", "conj"].iter().find_map(|k| s.get(k)) {
                return Err(e.diag("a Weierstrass curve takes only field, a and b"));
            }
            let (ae, be) = (s.require("a")?, s.require("b")?);
            let a = element(ae, &ae.value, 0, field)?;
            let b = element(be, &be.value, 0, field)?;
            return WCurve::new(a, b)
                .map(CurveDef::Weierstrass)
                .map_err(|err| s.diag(format!("curve {}: {err}", s.name)));
        }
        let n: usize = number(s.require("n")?)?;
        let q: usize = number(s.require("q")?)?;
        let ce = s.require("conj")?;
        let conj = match self.lookup(ce, &ce.value, doc, &[Kind::Aut])? {
            Obj::Aut(a) => a,
            _ => unreachable!("kind checked"),
        };
        if conj.field() != field {
            return Err(ce.diag(format!("{} acts on another field", ce.value)));
        }
        let roots = s
            .all("root")
            .map(|e| element(e, &e.value, 0, field))
            .collect::<Result<Vec<_>, _>>()?;
        if roots.is_empty() || n == 0 || q < 2 {
            return Err(s.diag(format!(
                "curve {} needs n ≥ 1, q ≥ 2 and at least one root",
                s.name
            )));
        }
        SuperCurve::from_roots(n, q, roots, conj)
            .map(CurveDef::Superelliptic)
            .map_err(|err| s.diag(format!("curve {}: {err}", s.name)))
    }

    fn resolve_datum(&self, s: &Section, doc: &Document) -> Result<DatumDef, Diagnostic> {
        let ce = s.require("curve")?;
        let curve = match self.lookup(ce, &ce.value, doc, &[Kind::Curve])? {
            Obj::Curve(c) => c,
            _ => unreachable!("kind checked"),
        };
        let field = curve.field();
        let ge = s.require("group")?;
        let mut names = Vec::new();
        let mut gens = Vec::new();
        for (off, tok) in tokens(&ge.value, |c| c == ',' || c.is_whitespace()) {
            let e = Entry {
                value: tok.to_string(),
                col: ge.col + off,
                ..ge.clone()
            };
            let aut = match self.lookup(&e, tok, doc, &[Kind::Aut])? {
                Obj::Aut(a) => a.clone(),
                _ => unreachable!("kind checked"),
            };
            if aut.field() != field {
                return Err(e.diag(format!("{tok} acts on another field than the curve")));
            }
            names.push(tok.to_string());
            gens.push(aut);
        }
        let group = verify_aut_group(&gens, None).map_err(|err| ge.diag(err.to_string()))?;
        let labels = label_elements(&group.elements, &names, &gens);
        let n = group.order();
        let mut slots: Vec<Option<String>> = vec![None; n];
        let mut entries: Vec<Option<&Entry>> = vec![None; n];
        for e in s.all("map") {
            let (lhs, rhs) = split_once(e, ":")?;
            let aut = aut_word(e, lhs.0, lhs.1, &names, &gens, field)?;
            let i = group
                .index_of(&aut)
                .ok_or_else(|| e.diag_at(lhs.1, "not in the group"))?;
            if slots[i].is_some() {
                return Err(e.diag_at(lhs.1, format!("second map for {}", labels[i])));
            }
            slots[i] = Some(rhs.0.to_string());
            entries[i] = Some(e);
        }
        let rhs_offset = |e: &Entry| {
            e.value
                .find(':')
                .map_or(0, |k| k + 1 + leading_ws(&e.value[k + 1..]))
        };
        let maps = match curve {
            CurveDef::Weierstrass(w) => {
                let mut u = Vec::with_capacity(n);
                for i in 0..n {
                    u.push(match (entries[i], &slots[i]) {
                        (Some(e), Some(text)) => element(e, text, rhs_offset(e), field)?,
                        _ if i == 0 => KummerElem::from_int(field, 1),
                        _ => {
                            return Err(
                                s.diag(format!("datum {} has no map for {}", s.name, labels[i]))
                            )
                        }
                    });
                }
                DatumMaps::Elliptic {
                    curve: w.clone(),
                    u,
                }
            }
            CurveDef::Superelliptic(x) => {
                let mut maps = Vec::with_capacity(n);
                for i in 0..n {
                    maps.push(match (entries[i], &slots[i]) {
                        (Some(e), Some(text)) => monomial_map(e, text, rhs_offset(e), field)?,
                        _ if i == 0 => MonomialMap::identity(field),
                        _ => {
                            return Err(
                                s.diag(format!("datum {} has no map for {}", s.name, labels[i]))
                            )
                        }
                    });
                }
                DatumMaps::Superelliptic {
                    curve: x.clone(),
                    maps,
                }
            }
        };
        let datum = DescentDatum::new(group, maps)
            .map_err(|err| s.diag(format!("datum {}: {err}", s.name)))?;
        Ok(DatumDef {
            datum,
            curve: ce.value.clone(),
            labels,
        })
    }
}

fn resolve_group(s: &Section, parent: Option<&NamedGroup>) -> Result<NamedGroup, Diagnostic> {
    let degree = match parent {
        Some(p) => p.group.degree(),
        None => {
            let d: usize = number(s.require("degree")?)?;
            if d == 0 {
                return Err(s.require("degree")?.diag("degree must be positive"));
            }
            d
        }
    };
    let mut scope = NamedGroup {
        group: PermGroup::trivial(degree),
        names: parent.map(|p| p.names.clone()).unwrap_or_default(),
        parent: parent.map(|_| s.require("parent").expect("checked").value.clone()),
    };
    let mut own: Vec<(String, Perm)> = Vec::new();
    for e in s.all("gen") {
        let split = e
            .value
            .find(char::is_whitespace)
            .ok_or_else(|| e.diag("expected 'gen <name> <element>'"))?;
        let name = &e.value[..split];
        if !valid_name(name) || name == "id" {
            return Err(e.diag(format!("invalid generator name '{name}'")));
        }
        if own.iter().any(|(n, _)| n == name) {
            return Err(e.diag(format!("generator '{name}' defined twice")));
        }
        let off = split + leading_ws(&e.value[split..]);
        let x = group_element(e, &e.value[off..], off, &scope)?;
        if let Some(p) = parent {
            if !p.group.contains(&x) {
                return Err(e.diag_at(off, format!("{x} is not in the parent group")));
            }
        }
        own.push((name.to_string(), x.clone()));
        scope.names.insert(own.len() - 1, (name.to_string(), x));
    }
    let gens: Vec<Perm> = own.iter().map(|(_, p)| p.clone()).collect();
    scope.group = PermGroup::new(degree, gens)
        .map_err(|err| s.diag(format!("{} {}: {err}", s.kind, s.name)))?;
    Ok(scope)
}

fn resolve_field(s: &Section) -> Result<Arc<KummerField>, Diagnostic> {
    let ne = s.require("conductor")?;
    let n: usize = number(ne)?;
    let base = KummerField::cyclotomic(n).map_err(|err| ne.diag(err.to_string()))?;
    let Some(ke) = s.get("kummer") else {
        return Ok(base);
    };
    let v = &ke.value;
    let body = v
        .strip_prefix("t^")
        .ok_or_else(|| ke.diag("expected 't^m = c'"))?;
    let (m, c) = body
        .split_once('=')
        .ok_or_else(|| ke.diag("expected 't^m = c'"))?;
    let m: usize = m
        .trim()
        .parse()
        .map_err(|_| ke.diag_at(2, format!("invalid exponent '{}'", m.trim())))?;
    let c_off = v.find('=').expect("split") + 1;
    let c_off = c_off + leading_ws(&v[c_off..]);
    let c = element(ke, c.trim(), c_off, &base)?;
    let c: CycloElem = c.as_base().cloned().expect("cyclotomic field");
    KummerField::new(n, m, c).map_err(|err| ke.diag(err.to_string()))
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || "_'".contains(c))
}

fn leading_ws(s: &str) -> usize {
    s.len() - s.trim_start().len()
}

fn number<T: std::str::FromStr>(e: &Entry) -> Result<T, Diagnostic> {
    e.value
        .parse()
        .map_err(|_| e.diag(format!("expected a number, found '{}'", e.value)))
}

/// `(text, byte offset in the value)` of the two trimmed halves.
type Part<'a> = (&'a str, usize);

fn split_once<'a>(e: &'a Entry, sep: &str) -> Result<(Part<'a>, Part<'a>), Diagnostic> {
    split_once_in(e, (&e.value, 0), sep)
}

fn split_once_in<'a>(
    e: &Entry,
    part: Part<'a>,
    sep: &str,
) -> Result<(Part<'a>, Part<'a>), Diagnostic> {
    let (text, off) = part;
    let k = text
        .find(sep)
        .ok_or_else(|| e.diag_at(off, format!("expected '{sep}'")))?;
    let (l, r) = (&text[..k], &text[k + sep.len()..]);
    let lt = l.trim();
    let rt = r.trim();
    if lt.is_empty() || rt.is_empty() {
        return Err(e.diag_at(off + k, format!("expected text on both sides of '{sep}'")));
    }
    Ok((
        (lt, off + leading_ws(l)),
        (rt, off + k + sep.len() + leading_ws(r)),
    ))
}

/// Non-empty tokens with their byte offsets.
fn tokens(s: &str, sep: impl Fn(char) -> bool) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        match (sep(c), start) {
            (true, Some(b)) => {
                out.push((b, &s[b..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(b) = start {
        out.push((b, &s[b..]));
    }
    out
}

fn cycles(e: &Entry, text: &str, off: usize, degree: usize) -> Result<Perm, Diagnostic> {
    Perm::parse(text, degree).map_err(|err| e.diag_at(off, format!("malformed cycles: {err}")))
}

/// Cycle notation, or a product `a*b^-1*...` of generator names in scope.
fn group_element(
    e: &Entry,
    text: &str,
    off: usize,
    scope: &NamedGroup,
) -> Result<Perm, Diagnostic> {
    let degree = scope.group.degree();
    if text.starts_with('(') {
        return cycles(e, text, off, degree);
    }
    let mut acc = Perm::identity(degree);
    for (k, tok) in tokens(text, |c| c == '*') {
        let lead = leading_ws(tok);
        let tok = tok.trim();
        let at = off + k + lead;
        let (name, exp) = match tok.split_once('^') {
            Some((n, x)) => (
                n.trim(),
                x.trim()
                    .parse::<i64>()
                    .map_err(|_| e.diag_at(at, format!("bad exponent in '{tok}'")))?,
            ),
            None => (tok, 1),
        };
        let x = if name == "id" || name == "1" {
            Perm::identity(degree)
        } else {
            scope
                .names
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, p)| p.clone())
                .ok_or_else(|| e.diag_at(at, format!("undefined generator '{name}'")))?
        };
        acc = acc.mul(&x.pow(exp));
    }
    Ok(acc)
}

fn element(
    e: &Entry,
    text: &str,
    off: usize,
    field: &Arc<KummerField>,
) -> Result<KummerElem, Diagnostic> {
    parse_element(text, field).map_err(|err| match err {
        descent_core::cyclo::CycloError::Parse { col, msg } => e.diag_at(off + col - 1, msg),
        other => e.diag_at(off, other.to_string()),
    })
}

/// `id` or a product of automorphism names, composed left to right.
fn aut_word(
    e: &Entry,
    text: &str,
    off: usize,
    names: &[String],
    gens: &[FieldAut],
    field: &Arc<KummerField>,
) -> Result<FieldAut, Diagnostic> {
    let mut acc = FieldAut::identity(field);
    for (k, tok) in tokens(text, |c| c == '*') {
        let tok = tok.trim();
        let (name, exp) = match tok.split_once('^') {
            Some((n, x)) => (
                n.trim(),
                x.trim()
                    .parse::<i64>()
                    .map_err(|_| e.diag_at(off + k, format!("bad exponent in '{tok}'")))?,
            ),
            None => (tok, 1),
        };
        if name == "id" {
            continue;
        }
        let g = names
            .iter()
            .position(|n| n == name)
            .map(|i| &gens[i])
            .ok_or_else(|| {
                e.diag_at(
                    off + k,
                    format!("'{name}' is not a generator of the datum's group"),
                )
            })?;
        let base = if exp < 0 { g.inverse() } else { g.clone() };
        for _ in 0..exp.unsigned_abs() {
            acc = acc.compose(&base);
        }
    }
    Ok(acc)
}

/// Shortest product of generator names for each element (breadth first).
fn label_elements(elements: &[FieldAut], names: &[String], gens: &[FieldAut]) -> Vec<String> {
    let mut labels: Vec<Option<String>> = vec![None; elements.len()];
    let mut frontier = vec![(FieldAut::identity(elements[0].field()), String::from("id"))];
    labels[0] = Some("id".into());
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (a, label) in &frontier {
            for (n, g) in names.iter().zip(gens) {
                let b = a.compose(g);
                if let Some(i) = elements.iter().position(|x| *x == b) {
                    if labels[i].is_none() {
                        let l = if label == "id" {
                            n.clone()
                        } else {
                            format!("{label}*{n}")
                        };
                        labels[i] = Some(l.clone());
                        next.push((b, l));
                    }
                }
            }
        }
        frontier = next;
    }
    labels.into_iter().map(|l| l.expect("generated")).collect()
}

/// Top-level split on `sep`, ignoring separators inside parentheses.
fn split_top(s: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ if c == sep && depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

fn monomial(
    e: &Entry,
    text: &str,
    off: usize,
    field: &Arc<KummerField>,
) -> Result<Monomial, Diagnostic> {
    let lead = leading_ws(text);
    let mut body = text.trim();
    let mut off = off + lead;
    let mut coeff = KummerElem::from_int(field, 1);
    if let Some(rest) = body.strip_prefix('-') {
        coeff = KummerElem::from_int(field, -1);
        body = rest;
        off += 1;
    }
    let (mut x, mut y) = (0i64, 0i64);
    for (k, factor) in split_top(body, '*') {
        let at = off + k + leading_ws(factor);
        let f = factor.trim();
        if f.is_empty() {
            return Err(e.diag_at(at, "empty factor"));
        }
        let var = f
            .strip_prefix('x')
            .map(|r| (&mut x, r))
            .or_else(|| f.strip_prefix('y').map(|r| (&mut y, r)));
        match var {
            Some((slot, "")) => *slot += 1,
            Some((slot, r)) if r.starts_with('^') => {
                *slot += r[1..]
                    .trim()
                    .parse::<i64>()
                    .map_err(|_| e.diag_at(at, format!("bad exponent in '{f}'")))?;
            }
            _ => coeff = descent_core::cyclo::Field::times(&coeff, &element(e, f, at, field)?),
        }
    }
    Ok(Monomial::new(coeff, x, y))
}

/// `(x, y) -> (c1*x^a*y^b, c2*x^c*y^d)`; the `(x, y) ->` prefix is optional.
fn monomial_map(
    e: &Entry,
    text: &str,
    off: usize,
    field: &Arc<KummerField>,
) -> Result<MonomialMap, Diagnostic> {
    let mut body = text.trim_end();
    let mut off = off;
    if let Some(k) = body.find("->") {
        off += k + 2;
        body = &body[k + 2..];
    }
    off += leading_ws(body);
    body = body.trim();
    let inner = body
        .strip_prefix('(')
        .and_then(|b| b.strip_suffix(')'))
        .ok_or_else(|| e.diag_at(off, "expected (X, Y)"))?;
    let parts = split_top(inner, ',');
    if parts.len() != 2 {
        return Err(e.diag_at(off, "expected two components"));
    }
    let mx = monomial(e, parts[0].1, off + 1 + parts[0].0, field)?;
    let my = monomial(e, parts[1].1, off + 1 + parts[1].0, field)?;
    MonomialMap::new(mx, my).map_err(|err| e.diag_at(off, err.to_string()))
}
