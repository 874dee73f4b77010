//! The plain-text container format.
//!
//! A file is a sequence of objects; `#` starts a comment. Single-line
//! objects:
//!
//! ```text
//! ground X 4
//! ground Y labels a b c
//! family B over X members E F
//! structure S over X generated by E F
//! uniform U over X base E F
//! ```
//!
//! Block objects run to a line holding `end`:
//!
//! ```text
//! relation E over X        # one `i j` pair per line
//! poset I                  # `elems k`, then `i <= j`; closed transitively
//! metric d over X index I  # `x y value`, value an index element or `inf`
//! structure S over X       # pairs of a single generator
//! map f from X to Y        # `x y` for f(x) = y
//! ```
//!
//! A semi-metric block may list each off-diagonal pair once; the mirror
//! pair gets the same value and the diagonal defaults to the zero. A
//! `metric ... raw` block must list all `n²` pairs. Names are unique per
//! kind and must be defined before they are referenced. Elements are
//! written as labels or decimal indices.

use std::sync::Arc;

use crate::coarse::CoarseStructure;
use crate::error::{Error, Result};
use crate::metric::GenMetric;
use crate::poset::{Ext, Poset};
use crate::props::SpaceMap;
use crate::relset::{GroundSet, Relation};
use crate::uniform::UniformBase;

/// Named objects of one kind in definition order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table<T> {
    items: Vec<(String, T)>,
}

impl<T> Default for Table<T> {
    fn default() -> Self {
        Table { items: Vec::new() }
    }
}

impl<T> Table<T> {
    pub fn get(&self, name: &str) -> Option<&T> {
        self.items.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.items.iter().map(|(n, _)| n.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &T)> {
        self.items.iter().map(|(n, v)| (n.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    fn insert(&mut self, kind: &'static str, name: &str, value: T) -> Result<usize> {
        if self.get(name).is_some() {
            return Err(Error::DuplicateName {
                kind,
                name: name.to_string(),
            });
        }
        self.items.push((name.to_string(), value));
        Ok(self.items.len() - 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationEntry {
    pub ground: String,
    pub relation: Relation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricEntry {
    pub ground: String,
    pub index: String,
    pub metric: GenMetric,
}

/// A family listed by reference to relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyEntry {
    pub ground: String,
    pub names: Vec<String>,
    pub members: Vec<Relation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureEntry {
    pub ground: String,
    pub structure: CoarseStructure,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformEntry {
    pub ground: String,
    pub names: Vec<String>,
    pub base: UniformBase,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapEntry {
    pub source: String,
    pub target: String,
    pub map: SpaceMap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Ground,
    Relation,
    Poset,
    Metric,
    Family,
    Structure,
    Uniform,
    Map,
}

/// Every object loaded from one or more files.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Workspace {
    pub grounds: Table<GroundSet>,
    pub relations: Table<RelationEntry>,
    pub posets: Table<Arc<Poset>>,
    pub metrics: Table<MetricEntry>,
    pub families: Table<FamilyEntry>,
    pub structures: Table<StructureEntry>,
    pub uniforms: Table<UniformEntry>,
    pub maps: Table<MapEntry>,
    order: Vec<(Kind, usize)>,
}

fn lookup<'a, T>(table: &'a Table<T>, kind: &'static str, name: &str) -> Result<&'a T> {
    table.get(name).ok_or_else(|| Error::UnknownName {
        kind,
        name: name.to_string(),
    })
}

impl Workspace {
    pub fn parse(text: &str) -> Result<Workspace> {
        let mut ws = Workspace::default();
        ws.extend_from_str(text)?;
        Ok(ws)
    }

    /// Adds the objects of another file; later files may refer to earlier
    /// ones.
    pub fn extend_from_str(&mut self, text: &str) -> Result<()> {
        Parser { ws: self }.run(text)
    }

    pub fn ground(&self, name: &str) -> Result<&GroundSet> {
        lookup(&self.grounds, "ground set", name)
    }

    pub fn relation(&self, name: &str) -> Result<&RelationEntry> {
        lookup(&self.relations, "relation", name)
    }

    pub fn poset(&self, name: &str) -> Result<&Arc<Poset>> {
        lookup(&self.posets, "poset", name)
    }

    pub fn metric(&self, name: &str) -> Result<&MetricEntry> {
        lookup(&self.metrics, "metric", name)
    }

    pub fn family(&self, name: &str) -> Result<&FamilyEntry> {
        lookup(&self.families, "family", name)
    }

    pub fn structure(&self, name: &str) -> Result<&StructureEntry> {
        lookup(&self.structures, "structure", name)
    }

    pub fn uniform(&self, name: &str) -> Result<&UniformEntry> {
        lookup(&self.uniforms, "uniform base", name)
    }

    pub fn map(&self, name: &str) -> Result<&MapEntry> {
        lookup(&self.maps, "map", name)
    }

    pub fn add_ground(&mut self, name: &str, ground: GroundSet) -> Result<()> {
        check_name(name)?;
        for l in ground.labels().unwrap_or_default() {
            check_label(l)?;
        }
        let i = self.grounds.insert("ground set", name, ground)?;
        self.order.push((Kind::Ground, i));
        Ok(())
    }

    pub fn add_relation(&mut self, name: &str, ground: &str, relation: Relation) -> Result<()> {
        check_name(name)?;
        self.check_carrier(ground, relation.carrier())?;
        let entry = RelationEntry {
            ground: ground.to_string(),
            relation,
        };
        let i = self.relations.insert("relation", name, entry)?;
        self.order.push((Kind::Relation, i));
        Ok(())
    }

    pub fn add_poset(&mut self, name: &str, poset: Arc<Poset>) -> Result<()> {
        check_name(name)?;
        let i = self.posets.insert("poset", name, poset)?;
        self.order.push((Kind::Poset, i));
        Ok(())
    }

    /// The index must already be registered under `index` and be the same
    /// poset the metric is valued in.
    pub fn add_metric(&mut self, name: &str, ground: &str, index: &str, metric: GenMetric) -> Result<()> {
        check_name(name)?;
        self.check_carrier(ground, metric.carrier())?;
        if **self.poset(index)? != **metric.index() {
            return Err(Error::Degenerate(format!("`{index}` is not the index of `{name}`")));
        }
        let entry = MetricEntry {
            ground: ground.to_string(),
            index: index.to_string(),
            metric,
        };
        let i = self.metrics.insert("metric", name, entry)?;
        self.order.push((Kind::Metric, i));
        Ok(())
    }

    pub fn add_family(&mut self, name: &str, ground: &str, names: &[String]) -> Result<()> {
        check_name(name)?;
        let members = self.members_over(ground, names)?;
        let entry = FamilyEntry {
            ground: ground.to_string(),
            names: names.to_vec(),
            members,
        };
        let i = self.families.insert("family", name, entry)?;
        self.order.push((Kind::Family, i));
        Ok(())
    }

    pub fn add_structure(&mut self, name: &str, ground: &str, structure: CoarseStructure) -> Result<()> {
        check_name(name)?;
        self.check_carrier(ground, structure.carrier())?;
        let entry = StructureEntry {
            ground: ground.to_string(),
            structure,
        };
        let i = self.structures.insert("structure", name, entry)?;
        self.order.push((Kind::Structure, i));
        Ok(())
    }

    pub fn add_uniform(&mut self, name: &str, ground: &str, names: &[String]) -> Result<()> {
        check_name(name)?;
        let members = self.members_over(ground, names)?;
        let n = self.ground(ground)?.len();
        let entry = UniformEntry {
            ground: ground.to_string(),
            names: names.to_vec(),
            base: UniformBase::new(n, members)?,
        };
        let i = self.uniforms.insert("uniform base", name, entry)?;
        self.order.push((Kind::Uniform, i));
        Ok(())
    }

    pub fn add_map(&mut self, name: &str, source: &str, target: &str, map: SpaceMap) -> Result<()> {
        check_name(name)?;
        self.check_carrier(source, map.source())?;
        self.check_carrier(target, map.target())?;
        let entry = MapEntry {
            source: source.to_string(),
            target: target.to_string(),
            map,
        };
        let i = self.maps.insert("map", name, entry)?;
        self.order.push((Kind::Map, i));
        Ok(())
    }

    fn check_carrier(&self, ground: &str, n: usize) -> Result<()> {
        let g = self.ground(ground)?.len();
        if g != n {
            return Err(Error::CarrierMismatch { left: g, right: n });
        }
        Ok(())
    }

    fn members_over(&self, ground: &str, names: &[String]) -> Result<Vec<Relation>> {
        self.ground(ground)?;
        names
            .iter()
            .map(|r| {
                let e = self.relation(r)?;
                if e.ground != ground {
                    return Err(Error::Degenerate(format!("relation `{r}` is over `{}`, not `{ground}`", e.ground)));
                }
                Ok(e.relation.clone())
            })
            .collect()
    }

    /// Serializes every object in definition order; parsing the result
    /// gives an equal workspace.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for &(kind, i) in &self.order {
            out.push_str(&self.object_text(kind, i));
        }
        out
    }

    fn object_text(&self, kind: Kind, i: usize) -> String {
        match kind {
            Kind::Ground => {
                let (name, g) = &self.grounds.items[i];
                ground_text(name, g)
            }
            Kind::Relation => {
                let (name, e) = &self.relations.items[i];
                e.relation.to_text(name, &e.ground)
            }
            Kind::Poset => {
                let (name, p) = &self.posets.items[i];
                p.to_text(name)
            }
            Kind::Metric => {
                let (name, e) = &self.metrics.items[i];
                e.metric.to_text(name, &e.ground, &e.index)
            }
            Kind::Family => {
                let (name, e) = &self.families.items[i];
                format!("family {name} over {} members {}\n", e.ground, e.names.join(" "))
            }
            Kind::Structure => {
                let (name, e) = &self.structures.items[i];
                structure_text(name, &e.ground, &e.structure)
            }
            Kind::Uniform => {
                let (name, e) = &self.uniforms.items[i];
                format!("uniform {name} over {} base {}\n", e.ground, e.names.join(" "))
            }
            Kind::Map => {
                let (name, e) = &self.maps.items[i];
                map_text(name, &e.source, &e.target, &e.map)
            }
        }
    }
}

pub fn ground_text(name: &str, g: &GroundSet) -> String {
    match g.labels() {
        Some(labels) => format!("ground {name} labels {}\n", labels.join(" ")),
        None => format!("ground {name} {}\n", g.len()),
    }
}

/// Block form listing the top, which generates the structure.
pub fn structure_text(name: &str, ground: &str, s: &CoarseStructure) -> String {
    let mut out = format!("structure {name} over {ground}\n");
    for (i, j) in s.top().pairs() {
        out.push_str(&format!("{i} {j}\n"));
    }
    out.push_str("end\n");
    out
}

pub fn map_text(name: &str, source: &str, target: &str, f: &SpaceMap) -> String {
    let mut out = format!("map {name} from {source} to {target}\n");
    for (x, y) in f.table().iter().enumerate() {
        out.push_str(&format!("{x} {y}\n"));
    }
    out.push_str("end\n");
    out
}

const KEYWORDS: [&str; 8] = ["ground", "relation", "poset", "metric", "family", "structure", "uniform", "map"];

fn check_name(name: &str) -> Result<()> {
    let ok = !name.is_empty()
        && !name.starts_with(|c: char| c.is_ascii_digit())
        && name.chars().all(|c| c.is_alphanumeric() || "_-.'".contains(c))
        && name != "end";
    if !ok {
        return Err(Error::Degenerate(format!("`{name}` is not a valid name")));
    }
    Ok(())
}

/// Numeral labels would shadow indices.
fn check_label(label: &str) -> Result<()> {
    if label.parse::<usize>().is_ok() || label == "inf" || label.contains('#') {
        return Err(Error::Degenerate(format!("`{label}` cannot be used as a label")));
    }
    Ok(())
}

/// A token with its 1-based column.
#[derive(Debug, Clone, Copy)]
struct Tok<'a> {
    col: usize,
    text: &'a str,
}

fn tokenize(line: &str) -> Vec<Tok<'_>> {
    let content = match line.find('#') {
        Some(k) => &line[..k],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (k, c) in content.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(k),
            (true, Some(s)) => {
                out.push(Tok {
                    col: content[..s].chars().count() + 1,
                    text: &content[s..k],
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Tok {
            col: content[..s].chars().count() + 1,
            text: &content[s..],
        });
    }
    out
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

/// Reports a construction error at the header of the object it came from.
fn at(line: usize, col: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        e @ Error::Parse { .. } => e,
        e => perr(line, col, e.to_string()),
    }
}

enum Block {
    Relation {
        name: String,
        ground: String,
        pairs: Vec<(usize, usize)>,
    },
    Poset {
        name: String,
        elems: Option<usize>,
        pairs: Vec<(usize, usize)>,
    },
    Metric {
        name: String,
        ground: String,
        index: String,
        raw: bool,
        n: usize,
        values: Vec<Option<Ext>>,
    },
    Structure {
        name: String,
        ground: String,
        pairs: Vec<(usize, usize)>,
    },
    Map {
        name: String,
        source: String,
        target: String,
        table: Vec<Option<usize>>,
    },
}

struct Parser<'w> {
    ws: &'w mut Workspace,
}

impl Parser<'_> {
    fn run(&mut self, text: &str) -> Result<()> {
        let mut open: Option<(usize, Block)> = None;
        for (k, line) in text.lines().enumerate() {
            let lineno = k + 1;
            let toks = tokenize(line);
            if toks.is_empty() {
                continue;
            }
            open = match open.take() {
                None => self.header(lineno, &toks)?.map(|b| (lineno, b)),
                Some((start, block)) if toks[0].text == "end" => {
                    if let Some(extra) = toks.get(1) {
                        return Err(perr(lineno, extra.col, "unexpected token after `end`"));
                    }
                    self.close(start, lineno, block)?;
                    None
                }
                Some((start, mut block)) => {
                    self.block_line(lineno, &toks, &mut block)?;
                    Some((start, block))
                }
            };
        }
        if let Some((start, _)) = open {
            return Err(perr(start, 1, "block is missing its `end`"));
        }
        Ok(())
    }

    fn ground_len(&self, tok: Tok<'_>, line: usize) -> Result<usize> {
        self.ws.ground(tok.text).map(|g| g.len()).map_err(at(line, tok.col))
    }

    fn element(&self, ground: &str, tok: Tok<'_>, line: usize) -> Result<usize> {
        let g = self.ws.ground(ground).map_err(at(line, tok.col))?;
        g.resolve(tok.text)
            .ok_or_else(|| perr(line, tok.col, format!("`{}` is not an element of `{ground}`", tok.text)))
    }

    fn header(&mut self, line: usize, toks: &[Tok<'_>]) -> Result<Option<Block>> {
        let kw = toks[0];
        let expect = |k: usize, what: &str| -> Result<Tok<'_>> {
            toks.get(k).copied().ok_or_else(|| {
                let col = toks.last().map_or(1, |t| t.col + t.text.len());
                perr(line, col, format!("expected {what}"))
            })
        };
        let keyword = |k: usize, word: &str| -> Result<()> {
            let t = expect(k, &format!("`{word}`"))?;
            if t.text != word {
                return Err(perr(line, t.col, format!("expected `{word}`, found `{}`", t.text)));
            }
            Ok(())
        };
        let no_more = |k: usize| -> Result<()> {
            match toks.get(k) {
                Some(t) => Err(perr(line, t.col, format!("unexpected `{}`", t.text))),
                None => Ok(()),
            }
        };
        let name = expect(1, "a name")?;
        if KEYWORDS.contains(&kw.text) {
            check_name(name.text).map_err(at(line, name.col))?;
        }
        let named = |t: Tok<'_>| t.text.to_string();
        match kw.text {
            "ground" => {
                let size = expect(2, "a size or `labels`")?;
                let g = if size.text == "labels" {
                    let labels: Vec<&str> = toks[3..].iter().map(|t| t.text).collect();
                    for t in &toks[3..] {
                        check_label(t.text).map_err(at(line, t.col))?;
                    }
                    GroundSet::with_labels(labels).map_err(at(line, size.col))?
                } else {
                    let n = size
                        .text
                        .parse()
                        .map_err(|_| perr(line, size.col, format!("`{}` is not a size", size.text)))?;
                    no_more(3)?;
                    GroundSet::new(n).map_err(at(line, size.col))?
                };
                self.ws.add_ground(name.text, g).map_err(at(line, name.col))?;
                Ok(None)
            }
            "relation" => {
                keyword(2, "over")?;
                let ground = expect(3, "a ground set")?;
                self.ground_len(ground, line)?;
                no_more(4)?;
                Ok(Some(Block::Relation {
                    name: named(name),
                    ground: named(ground),
                    pairs: Vec::new(),
                }))
            }
            "poset" => {
                no_more(2)?;
                Ok(Some(Block::Poset {
                    name: named(name),
                    elems: None,
                    pairs: Vec::new(),
                }))
            }
            "metric" => {
                keyword(2, "over")?;
                let ground = expect(3, "a ground set")?;
                let n = self.ground_len(ground, line)?;
                keyword(4, "index")?;
                let index = expect(5, "an index poset")?;
                self.ws.poset(index.text).map_err(at(line, index.col))?;
                let raw = match toks.get(6) {
                    Some(t) if t.text == "raw" => {
                        no_more(7)?;
                        true
                    }
                    _ => {
                        no_more(6)?;
                        false
                    }
                };
                Ok(Some(Block::Metric {
                    name: named(name),
                    ground: named(ground),
                    index: named(index),
                    raw,
                    n,
                    values: vec![None; n * n],
                }))
            }
            "family" | "uniform" => {
                keyword(2, "over")?;
                let ground = expect(3, "a ground set")?;
                self.ground_len(ground, line)?;
                let marker = if kw.text == "family" { "members" } else { "base" };
                keyword(4, marker)?;
                let mut names = Vec::new();
                for t in &toks[5..] {
                    self.ws.relation(t.text).map_err(at(line, t.col))?;
                    names.push(t.text.to_string());
                }
                let result = if kw.text == "family" {
                    self.ws.add_family(name.text, ground.text, &names)
                } else {
                    self.ws.add_uniform(name.text, ground.text, &names)
                };
                result.map_err(at(line, name.col))?;
                Ok(None)
            }
            "structure" => {
                keyword(2, "over")?;
                let ground = expect(3, "a ground set")?;
                let n = self.ground_len(ground, line)?;
                if toks.len() == 4 {
                    return Ok(Some(Block::Structure {
                        name: named(name),
                        ground: named(ground),
                        pairs: Vec::new(),
                    }));
                }
                keyword(4, "generated")?;
                keyword(5, "by")?;
                let mut gens = Vec::new();
                for t in &toks[6..] {
                    let e = self.ws.relation(t.text).map_err(at(line, t.col))?;
                    if e.ground != ground.text {
                        return Err(perr(line, t.col, format!("relation `{}` is over `{}`", t.text, e.ground)));
                    }
                    gens.push(e.relation.clone());
                }
                let s = CoarseStructure::generate(n, &gens).map_err(at(line, name.col))?;
                self.ws.add_structure(name.text, ground.text, s).map_err(at(line, name.col))?;
                Ok(None)
            }
            "map" => {
                keyword(2, "from")?;
                let source = expect(3, "a source ground set")?;
                let n = self.ground_len(source, line)?;
                keyword(4, "to")?;
                let target = expect(5, "a target ground set")?;
                self.ground_len(target, line)?;
                no_more(6)?;
                Ok(Some(Block::Map {
                    name: named(name),
                    source: named(source),
                    target: named(target),
                    table: vec![None; n],
                }))
            }
            other => Err(perr(line, kw.col, format!("unknown object kind `{other}`"))),
        }
    }

    fn pair(&self, ground: &str, toks: &[Tok<'_>], line: usize) -> Result<(usize, usize)> {
        if toks.len() != 2 {
            let col = toks.get(2).map_or(toks[0].col, |t| t.col);
            return Err(perr(line, col, "expected a pair `i j`"));
        }
        Ok((self.element(ground, toks[0], line)?, self.element(ground, toks[1], line)?))
    }

    fn block_line(&self, line: usize, toks: &[Tok<'_>], block: &mut Block) -> Result<()> {
        match block {
            Block::Relation { ground, pairs, .. } | Block::Structure { ground, pairs, .. } => {
                pairs.push(self.pair(ground, toks, line)?);
            }
            Block::Poset { elems, pairs, .. } => {
                if toks[0].text == "elems" {
                    if elems.is_some() || !pairs.is_empty() {
                        return Err(perr(line, toks[0].col, "`elems` must come first, once"));
                    }
                    let t = toks.get(1).ok_or_else(|| perr(line, toks[0].col, "expected a count"))?;
                    let k = t
                        .text
                        .parse()
                        .map_err(|_| perr(line, t.col, format!("`{}` is not a count", t.text)))?;
                    if let Some(extra) = toks.get(2) {
                        return Err(perr(line, extra.col, "unexpected token"));
                    }
                    *elems = Some(k);
                    return Ok(());
                }
                let m = elems.ok_or_else(|| perr(line, toks[0].col, "expected `elems k` first"))?;
                if toks.len() != 3 || toks[1].text != "<=" {
                    return Err(perr(line, toks[0].col, "expected `i <= j`"));
                }
                let idx = |t: Tok<'_>| -> Result<usize> {
                    t.text
                        .parse()
                        .ok()
                        .filter(|&a| a < m)
                        .ok_or_else(|| perr(line, t.col, format!("`{}` is not an element of a {m}-element poset", t.text)))
                };
                pairs.push((idx(toks[0])?, idx(toks[2])?));
            }
            Block::Metric {
                ground,
                index,
                raw,
                n,
                values,
                ..
            } => {
                if toks.len() != 3 {
                    let col = toks.get(3).map_or(toks[0].col, |t| t.col);
                    return Err(perr(line, col, "expected `x y value`"));
                }
                let x = self.element(ground, toks[0], line)?;
                let y = self.element(ground, toks[1], line)?;
                let m = self.ws.poset(index)?.len();
                let v = match toks[2].text {
                    "inf" => Ext::Inf,
                    s => Ext::Fin(
                        s.parse()
                            .ok()
                            .filter(|&a| a < m)
                            .ok_or_else(|| perr(line, toks[2].col, format!("`{s}` is not an element of `{index}` or `inf`")))?,
                    ),
                };
                let mut targets = vec![(x, y)];
                if !*raw && x != y {
                    // the mirror pair of a semi-metric
                    targets.push((y, x));
                }
                for (a, b) in targets {
                    match values[a * *n + b].replace(v) {
                        Some(old) if old != v => {
                            return Err(perr(line, toks[2].col, format!("({a}, {b}) already has value {old}")));
                        }
                        _ => {}
                    }
                }
            }
            Block::Map { source, target, table, .. } => {
                let (x, y) = if toks.len() == 2 {
                    (self.element(source, toks[0], line)?, self.element(target, toks[1], line)?)
                } else {
                    let col = toks.get(2).map_or(toks[0].col, |t| t.col);
                    return Err(perr(line, col, "expected `x y`"));
                };
                if table[x].replace(y).is_some() {
                    return Err(perr(line, toks[0].col, format!("{x} is mapped twice")));
                }
            }
        }
        Ok(())
    }

    fn close(&mut self, start: usize, end: usize, block: Block) -> Result<()> {
        let here = at(start, 1);
        match block {
            Block::Relation { name, ground, pairs } => {
                let n = self.ws.ground(&ground)?.len();
                let r = Relation::from_pairs(n, pairs).map_err(&here)?;
                self.ws.add_relation(&name, &ground, r).map_err(&here)
            }
            Block::Poset { name, elems, pairs } => {
                let m = elems.ok_or_else(|| perr(end, 1, "poset block without `elems`"))?;
                let p = Poset::from_pairs(m, &pairs).map_err(&here)?;
                self.ws.add_poset(&name, Arc::new(p)).map_err(&here)
            }
            Block::Metric {
                name,
                ground,
                index,
                raw,
                n,
                values,
            } => {
                let idx = self.ws.poset(&index)?.clone();
                let zero = if raw { None } else { idx.zero() };
                let mut table = Vec::with_capacity(values.len());
                for (k, v) in values.iter().enumerate() {
                    let (x, y) = (k / n, k % n);
                    match (v, zero) {
                        (Some(v), _) => table.push(*v),
                        (None, Some(z)) if x == y => table.push(Ext::Fin(z)),
                        (None, _) => return Err(perr(end, 1, format!("missing value for ({x}, {y})"))),
                    }
                }
                let d = if raw {
                    GenMetric::raw(n, idx, table)
                } else {
                    GenMetric::new(n, idx, table)
                }
                .map_err(&here)?;
                self.ws.add_metric(&name, &ground, &index, d).map_err(&here)
            }
            Block::Structure { name, ground, pairs } => {
                let n = self.ws.ground(&ground)?.len();
                let gen = Relation::from_pairs(n, pairs).map_err(&here)?;
                let s = CoarseStructure::generate(n, &[gen]).map_err(&here)?;
                self.ws.add_structure(&name, &ground, s).map_err(&here)
            }
            Block::Map {
                name,
                source,
                target,
                table,
            } => {
                let m = self.ws.ground(&target)?.len();
                let mut full = Vec::with_capacity(table.len());
                for (x, y) in table.iter().enumerate() {
                    full.push(y.ok_or_else(|| perr(end, 1, format!("no image given for {x}")))?);
                }
                let f = SpaceMap::new(m, full).map_err(&here)?;
                self.ws.add_map(&name, &source, &target, f).map_err(&here)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# three points on a line
ground X 3
ground Y labels a b
relation E over X
0 0
1 1
2 2
0 1
1 0
end
poset I
elems 3
0 <= 1   # covers only
1 <= 2
end
metric d over X index I
0 1 1
0 2 2
1 2 inf
end
family B over X members E
structure S over X generated by E
structure T over X
1 2
end
uniform U over X base E
map f from X to Y
0 a
1 a
2 b
end
";

    #[test]
    fn parses_every_kind() {
        let ws = Workspace::parse(SAMPLE).unwrap();
        assert_eq!(ws.ground("Y").unwrap().labels().unwrap(), ["a", "b"]);
        let d = &ws.metric("d").unwrap().metric;
        assert_eq!(d.get(1, 0), Ext::Fin(1));
        assert_eq!(d.get(2, 1), Ext::Inf);
        assert_eq!(d.get(2, 2), Ext::Fin(0));
        assert!(ws.poset("I").unwrap().leq(0, 2));
        assert_eq!(ws.family("B").unwrap().members.len(), 1);
        assert!(ws.structure("S").unwrap().structure.top().contains(1, 0));
        assert!(ws.structure("T").unwrap().structure.top().contains(2, 1));
        assert_eq!(ws.map("f").unwrap().map.table(), [0, 0, 1]);
        assert_eq!(ws.uniform("U").unwrap().base.zero(), &ws.relation("E").unwrap().relation);
    }

    #[test]
    fn round_trip_is_exact() {
        let ws = Workspace::parse(SAMPLE).unwrap();
        let text = ws.to_text();
        let back = Workspace::parse(&text).unwrap();
        assert_eq!(back, ws);
        assert_eq!(back.to_text(), text);
    }

    fn err_at(text: &str) -> (usize, usize) {
        match Workspace::parse(text).unwrap_err() {
            Error::Parse { line, col, .. } => (line, col),
            e => panic!("not a parse error: {e}"),
        }
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(err_at("ground X 3\nrelation E over X\n0 5\nend\n"), (3, 3));
        assert_eq!(err_at("ground X 3\nrelation E over Z\nend\n"), (2, 17));
        assert_eq!(err_at("ground X 3\n  bogus thing\n"), (2, 3));
        assert_eq!(err_at("ground X 3\nrelation E over X\n0 1\n"), (2, 1));
        assert_eq!(err_at("ground X two\n"), (1, 10));
        assert_eq!(err_at("ground X 2\nground X 3\n"), (2, 8));
        assert_eq!(err_at("ground X labels a 1\n"), (1, 19));
    }

    #[test]
    fn metric_blocks_check_pairs() {
        let head = "ground X 2\nposet I\nelems 2\n0 <= 1\nend\n";
        // a missing off-diagonal pair is reported at `end`
        assert_eq!(err_at(&format!("{head}metric d over X index I\nend\n")), (7, 1));
        // a conflicting mirror pair
        assert_eq!(err_at(&format!("{head}metric d over X index I\n0 1 1\n1 0 0\nend\n")), (8, 5));
        // a nonzero diagonal is rejected at the header
        assert_eq!(err_at(&format!("{head}metric d over X index I\n0 1 1\n0 0 1\nend\n")), (6, 1));
        // raw tables need every entry
        let raw = format!("{head}metric d over X index I raw\n0 0 1\n0 1 0\n1 0 1\n1 1 0\nend\n");
        let ws = Workspace::parse(&raw).unwrap();
        assert!(!ws.metric("d").unwrap().metric.is_validated_semi());
        assert_eq!(Workspace::parse(&ws.to_text()).unwrap(), ws);
        assert_eq!(err_at(&format!("{head}metric d over X index I raw\n0 1 1\nend\n")), (8, 1));
    }

    #[test]
    fn files_extend_a_workspace() {
        let mut ws = Workspace::parse("ground X 2\n").unwrap();
        ws.extend_from_str("relation E over X\n0 0\nend\n").unwrap();
        assert_eq!(ws.relation("E").unwrap().relation, Relation::from_pairs(2, [(0, 0)]).unwrap());
    }

    #[test]
    fn uniform_bases_are_validated() {
        let text = "ground X 3\nrelation P over X\n0 0\n1 1\n2 2\n0 1\n1 0\n1 2\n2 1\nend\nuniform U over X base P\n";
        assert_eq!(err_at(text).0, 11);
    }
}
