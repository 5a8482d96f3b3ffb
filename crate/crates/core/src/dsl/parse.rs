use std::collections::{BTreeMap, BTreeSet};

use crate::action::PartialAction;
use crate::category::{Category, MorId};

use super::{ErrorCode, GMap, OpenFamily, ParseError, Scenario, SourceSpans, Span};

#[derive(Debug, Clone, Copy)]
struct Tok<'a> {
    text: &'a str,
    span: Span,
}

fn is_ident(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn tokenize(line: &str, lineno: usize) -> Result<Vec<Tok<'_>>, ParseError> {
    let line = line.split('#').next().unwrap_or("");
    let mut toks = Vec::new();
    let mut chars = line.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let span = Span {
            line: lineno,
            col: line[..i].chars().count() + 1,
        };
        if c.is_whitespace() {
            chars.next();
        } else if is_ident(c) {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if !is_ident(d) {
                    break;
                }
                end = j + d.len_utf8();
                chars.next();
            }
            toks.push(Tok {
                text: &line[i..end],
                span,
            });
        } else if line[i..].starts_with("->") {
            chars.next();
            chars.next();
            toks.push(Tok {
                text: &line[i..i + 2],
                span,
            });
        } else if matches!(c, ':' | '.' | '=') {
            chars.next();
            toks.push(Tok {
                text: &line[i..i + 1],
                span,
            });
        } else {
            return Err(ParseError::new(
                ErrorCode::Syntax,
                span,
                format!("unexpected character `{c}`"),
            ));
        }
    }
    Ok(toks)
}

type Line<'a> = Vec<Tok<'a>>;

struct Block<'a> {
    header: Tok<'a>,
    name: Tok<'a>,
    body: Vec<Line<'a>>,
}

#[derive(Default)]
struct Blocks<'a> {
    category: Option<Block<'a>>,
    action: Option<Block<'a>>,
    top_mor: Option<Block<'a>>,
    top_space: Option<Block<'a>>,
    map: Option<Block<'a>>,
}

fn syntax(span: Span, msg: impl Into<String>) -> ParseError {
    ParseError::new(ErrorCode::Syntax, span, msg)
}

fn split_blocks(text: &str) -> Result<Blocks<'_>, ParseError> {
    let mut blocks = Blocks::default();
    let mut current: Option<(Block, &str)> = None;
    let mut last = Span { line: 1, col: 1 };
    for (i, raw) in text.lines().enumerate() {
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let toks = tokenize(raw, i + 1)?;
        let Some(&first) = toks.first() else { continue };
        last = first.span;
        if let Some((block, _)) = current.as_mut() {
            if first.text == "end" {
                if toks.len() > 1 {
                    return Err(syntax(toks[1].span, "unexpected text after `end`"));
                }
                let (block, kind) = current.take().expect("inside a block");
                store(&mut blocks, kind, block)?;
            } else {
                block.body.push(toks);
            }
            continue;
        }
        let kind = match first.text {
            "category" | "action" | "map" => first.text,
            "topology" => match toks.get(1).map(|t| t.text) {
                Some("mor") => "topology mor",
                Some("space") => "topology space",
                _ => {
                    let span = toks.get(1).map_or(first.span, |t| t.span);
                    return Err(syntax(span, "expected `topology mor` or `topology space`"));
                }
            },
            other => {
                return Err(syntax(
                    first.span,
                    format!("expected a block, found `{other}`"),
                ));
            }
        };
        let name = *toks
            .get(1)
            .filter(|t| is_name(t.text))
            .ok_or_else(|| syntax(first.span, format!("`{kind}` needs a name")))?;
        let block = Block {
            header: first,
            name,
            body: Vec::new(),
        };
        match &toks[2..] {
            [] => current = Some((block, kind)),
            [end] if end.text == "end" => store(&mut blocks, kind, block)?,
            [t, ..] => return Err(syntax(t.span, "unexpected text after block header")),
        }
    }
    if let Some((block, kind)) = current {
        return Err(syntax(
            block.header.span,
            format!("`{kind}` block is never closed (last line {})", last.line),
        ));
    }
    Ok(blocks)
}

fn store<'a>(blocks: &mut Blocks<'a>, kind: &str, block: Block<'a>) -> Result<(), ParseError> {
    let slot = match kind {
        "category" => &mut blocks.category,
        "action" => &mut blocks.action,
        "map" => &mut blocks.map,
        "topology mor" => &mut blocks.top_mor,
        _ => &mut blocks.top_space,
    };
    if slot.is_some() {
        return Err(ParseError::new(
            ErrorCode::DupDef,
            block.header.span,
            format!("second `{kind}` block"),
        ));
    }
    *slot = Some(block);
    Ok(())
}

fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(is_ident)
}

fn ident<'a>(line: &[Tok<'a>], i: usize, what: &str) -> Result<Tok<'a>, ParseError> {
    match line.get(i) {
        Some(t) if is_name(t.text) => Ok(*t),
        Some(t) => Err(syntax(
            t.span,
            format!("expected {what}, found `{}`", t.text),
        )),
        None => Err(syntax(
            line.last().expect("non-empty line").span,
            format!("expected {what} at end of line"),
        )),
    }
}

fn punct(line: &[Tok], i: usize, p: &str) -> Result<(), ParseError> {
    match line.get(i) {
        Some(t) if t.text == p => Ok(()),
        Some(t) => Err(syntax(
            t.span,
            format!("expected `{p}`, found `{}`", t.text),
        )),
        None => Err(syntax(
            line.last().expect("non-empty line").span,
            format!("expected `{p}` at end of line"),
        )),
    }
}

fn exact_len(line: &[Tok], n: usize) -> Result<(), ParseError> {
    match line.get(n) {
        Some(t) => Err(syntax(t.span, format!("unexpected `{}`", t.text))),
        None => Ok(()),
    }
}

fn dup(span: Span, msg: String) -> ParseError {
    ParseError::new(ErrorCode::DupDef, span, msg)
}

fn unknown(span: Span, msg: String) -> ParseError {
    ParseError::new(ErrorCode::UnknownId, span, msg)
}

/// Looks up a morphism, accepting `id_<object>` for an object.
fn morphism(cat: &Category, t: Tok) -> Result<MorId, ParseError> {
    cat.id(t.text)
        .or_else(|| {
            t.text
                .strip_prefix("id_")
                .and_then(|o| cat.id(o))
                .filter(|&o| cat.is_object(o))
        })
        .ok_or_else(|| unknown(t.span, format!("unknown morphism `{}`", t.text)))
}

fn parse_category<'a>(block: &Block<'a>, spans: &mut SourceSpans) -> Result<Category, ParseError> {
    let mut objects: Vec<String> = Vec::new();
    let mut mors: Vec<(Tok<'a>, Tok<'a>, Tok<'a>)> = Vec::new();
    let mut comps: Vec<[Tok<'a>; 3]> = Vec::new();
    let mut defined: BTreeMap<&'a str, Span> = BTreeMap::new();
    let mut define = |t: Tok<'a>, spans: &mut SourceSpans, kind: &str| {
        if defined.insert(t.text, t.span).is_some() {
            return Err(dup(t.span, format!("`{}` is defined twice", t.text)));
        }
        spans.insert(format!("{kind} {}", t.text), t.span);
        Ok(())
    };
    for line in &block.body {
        match line[0].text {
            "object" => {
                let o = ident(line, 1, "an object name")?;
                exact_len(line, 2)?;
                define(o, spans, "object")?;
                objects.push(o.text.to_string());
            }
            "mor" => {
                let g = ident(line, 1, "a morphism name")?;
                punct(line, 2, ":")?;
                let d = ident(line, 3, "a domain")?;
                punct(line, 4, "->")?;
                let c = ident(line, 5, "a codomain")?;
                exact_len(line, 6)?;
                define(g, spans, "mor")?;
                mors.push((g, d, c));
            }
            "comp" => {
                let g = ident(line, 1, "a morphism")?;
                punct(line, 2, ".")?;
                let h = ident(line, 3, "a morphism")?;
                punct(line, 4, "=")?;
                let k = ident(line, 5, "a morphism")?;
                exact_len(line, 6)?;
                comps.push([g, h, k]);
            }
            other => {
                return Err(syntax(
                    line[0].span,
                    format!("expected `object`, `mor` or `comp`, found `{other}`"),
                ))
            }
        }
    }
    let object_set: BTreeSet<&str> = objects.iter().map(String::as_str).collect();
    for &(_, d, c) in &mors {
        for end in [d, c] {
            if !object_set.contains(end.text) {
                return Err(unknown(end.span, format!("unknown object `{}`", end.text)));
            }
        }
    }
    let morphisms: Vec<(&str, &str, &str)> = mors
        .iter()
        .map(|(g, d, c)| (g.text, d.text, c.text))
        .collect();
    let skeleton = Category::from_raw(
        &objects.iter().map(String::as_str).collect::<Vec<_>>(),
        &morphisms,
        &[],
    )
    .expect("names were checked");
    let mut table: BTreeMap<(MorId, MorId), MorId> = BTreeMap::new();
    for [g, h, k] in &comps {
        let (gi, hi, ki) = (
            morphism(&skeleton, *g)?,
            morphism(&skeleton, *h)?,
            morphism(&skeleton, *k)?,
        );
        if table.insert((gi, hi), ki).is_some() {
            return Err(dup(
                g.span,
                format!("composite {} . {} is given twice", g.text, h.text),
            ));
        }
        spans.insert(
            format!("comp {}.{}", skeleton.name(gi), skeleton.name(hi)),
            g.span,
        );
    }
    let composites: Vec<(&str, &str, &str)> = table
        .iter()
        .map(|(&(g, h), &k)| (skeleton.name(g), skeleton.name(h), skeleton.name(k)))
        .collect();
    let cat = Category::new(
        &objects.iter().map(String::as_str).collect::<Vec<_>>(),
        &morphisms,
        &composites,
    )
    .expect("names were checked");
    for (g, h) in cat.composable_pairs() {
        if !cat.is_object(g) && !cat.is_object(h) && cat.compose(g, h).is_none() {
            let span = spans
                .get(&format!("mor {}", cat.name(h)))
                .unwrap_or(block.name.span);
            return Err(ParseError::new(
                ErrorCode::MissingComp,
                span,
                format!(
                    "no `comp {} . {} = ...` line for a composable pair",
                    cat.name(g),
                    cat.name(h)
                ),
            ));
        }
    }
    Ok(cat)
}

fn parse_action(
    block: &Block,
    cat: &Category,
    spans: &mut SourceSpans,
) -> Result<PartialAction, ParseError> {
    let mut points: Vec<Tok> = Vec::new();
    let mut acts: Vec<[Tok; 3]> = Vec::new();
    for line in &block.body {
        match line[0].text {
            "point" => {
                ident(line, 1, "a point name")?;
                for i in 1..line.len() {
                    points.push(ident(line, i, "a point name")?);
                }
            }
            "act" => {
                let g = ident(line, 1, "a morphism")?;
                let x = ident(line, 2, "a point")?;
                punct(line, 3, "=")?;
                let y = ident(line, 4, "a point")?;
                exact_len(line, 5)?;
                acts.push([g, x, y]);
            }
            other => {
                return Err(syntax(
                    line[0].span,
                    format!("expected `point` or `act`, found `{other}`"),
                ))
            }
        }
    }
    let mut seen = BTreeSet::new();
    for p in &points {
        if !seen.insert(p.text) {
            return Err(dup(p.span, format!("point `{}` is declared twice", p.text)));
        }
        spans.insert(format!("point {}", p.text), p.span);
    }
    let mut act = PartialAction::empty(cat.len(), points.iter().map(|p| p.text.to_string()))
        .expect("points are distinct");
    let point = |t: Tok| {
        act.point(t.text)
            .ok_or_else(|| unknown(t.span, format!("unknown point `{}`", t.text)))
    };
    let mut entries = Vec::new();
    for [g, x, y] in acts {
        let (gi, xi, yi) = (morphism(cat, g)?, point(x)?, point(y)?);
        let key = format!("act {} {}", cat.name(gi), x.text);
        if spans.get(&key).is_some() {
            return Err(dup(
                g.span,
                format!("{} . {} is given twice", g.text, x.text),
            ));
        }
        spans.insert(key, g.span);
        entries.push((gi, xi, yi));
    }
    for (g, x, y) in entries {
        act.set(g, x, Some(y));
    }
    Ok(act)
}

fn parse_topology(
    block: &Block,
    kind: &str,
    carrier: &[String],
    resolve: &dyn Fn(Tok) -> Result<String, ParseError>,
) -> Result<OpenFamily, ParseError> {
    let mut opens = Vec::new();
    let mut seen = BTreeSet::new();
    for line in &block.body {
        if line[0].text != "open" {
            return Err(syntax(
                line[0].span,
                format!("expected `open`, found `{}`", line[0].text),
            ));
        }
        ident(line, 1, "a member or `empty`")?;
        let members: Vec<String> = if line[1].text == "empty" && line.len() == 2 {
            Vec::new()
        } else {
            let mut ms = Vec::new();
            for i in 1..line.len() {
                let t = ident(line, i, "a member")?;
                let m = resolve(t)?;
                if ms.contains(&m) {
                    return Err(dup(t.span, format!("`{}` is listed twice", t.text)));
                }
                ms.push(m);
            }
            ms
        };
        let key: BTreeSet<String> = members.iter().cloned().collect();
        if !seen.insert(key) {
            return Err(dup(line[0].span, "the same open is listed twice".into()));
        }
        opens.push(members);
    }
    let whole: BTreeSet<String> = carrier.iter().cloned().collect();
    let covered = opens
        .iter()
        .any(|o| o.iter().cloned().collect::<BTreeSet<_>>() == whole);
    if !covered {
        return Err(ParseError::new(
            ErrorCode::TopNoTotal,
            block.header.span,
            format!("`topology {kind}` does not list the whole carrier as open"),
        ));
    }
    Ok(OpenFamily { opens })
}

fn parse_map(
    block: &Block,
    act: &PartialAction,
    spans: &mut SourceSpans,
) -> Result<GMap, ParseError> {
    let mut pairs = Vec::new();
    for line in &block.body {
        if line[0].text != "gfun" {
            return Err(syntax(
                line[0].span,
                format!("expected `gfun`, found `{}`", line[0].text),
            ));
        }
        let x = ident(line, 1, "a source point")?;
        punct(line, 2, "=")?;
        let z = ident(line, 3, "a point")?;
        exact_len(line, 4)?;
        if act.point(z.text).is_none() {
            return Err(unknown(z.span, format!("unknown point `{}`", z.text)));
        }
        let key = format!("gfun {}", x.text);
        if spans.get(&key).is_some() {
            return Err(dup(x.span, format!("`{}` is mapped twice", x.text)));
        }
        spans.insert(key, x.span);
        pairs.push((x.text.to_string(), z.text.to_string()));
    }
    Ok(GMap {
        name: block.name.text.to_string(),
        pairs,
    })
}

/// Parses a complete scenario; the file must contain a category block.
pub fn parse(text: &str) -> Result<Scenario, ParseError> {
    parse_inner(text, None)
}

/// Parses a scenario, using `category` when the file has no category
/// block of its own.
pub fn parse_with_category(text: &str, category: &Category) -> Result<Scenario, ParseError> {
    parse_inner(text, Some(category))
}

fn parse_inner(text: &str, fallback: Option<&Category>) -> Result<Scenario, ParseError> {
    let blocks = split_blocks(text)?;
    let mut spans = SourceSpans::default();
    let (category_name, category) = match (&blocks.category, fallback) {
        (Some(b), _) => {
            spans.insert("category".into(), b.header.span);
            (
                Some(b.name.text.to_string()),
                parse_category(b, &mut spans)?,
            )
        }
        (None, Some(cat)) => (None, cat.clone()),
        (None, None) => {
            return Err(syntax(Span { line: 1, col: 1 }, "no `category` block"));
        }
    };
    let (action_name, action) = match &blocks.action {
        Some(b) => {
            spans.insert("action".into(), b.header.span);
            (
                Some(b.name.text.to_string()),
                parse_action(b, &category, &mut spans)?,
            )
        }
        None => (
            None,
            PartialAction::empty(category.len(), Vec::<String>::new()).expect("no points"),
        ),
    };
    let top_mor = blocks
        .top_mor
        .as_ref()
        .map(|b| {
            spans.insert("topology mor".into(), b.header.span);
            parse_topology(b, "mor", category.names(), &|t| {
                morphism(&category, t).map(|g| category.name(g).to_string())
            })
        })
        .transpose()?;
    let top_space = blocks
        .top_space
        .as_ref()
        .map(|b| {
            spans.insert("topology space".into(), b.header.span);
            parse_topology(b, "space", action.point_names(), &|t| {
                action
                    .point(t.text)
                    .map(|_| t.text.to_string())
                    .ok_or_else(|| unknown(t.span, format!("unknown point `{}`", t.text)))
            })
        })
        .transpose()?;
    let map = blocks
        .map
        .as_ref()
        .map(|b| {
            spans.insert("map".into(), b.header.span);
            parse_map(b, &action, &mut spans)
        })
        .transpose()?;
    Ok(Scenario {
        category_name,
        category,
        action_name,
        action,
        top_mor,
        top_space,
        map,
        spans,
    })
}
