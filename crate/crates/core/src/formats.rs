//! Line-oriented text formats for groups, G-sets, G-maps, G-rings and ideals.
//!
//! Blank lines and `#` comments are ignored everywhere. Each printer emits the
//! canonical form, and parsing a printed form gives back the same object.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{invalid, Result};
use crate::fixed_point::GRing;
use crate::group::{Group, GroupSpec};
use crate::gset::{GMap, GSet};
use crate::lattice::Lattice;
use crate::level_ideal::LevelIdeal;
use crate::ring::{Elem, FiniteRing, LevelRing};
use crate::tambara::Tambara;

fn lines(text: &str) -> Vec<&str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect()
}

fn ints(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|w| w.parse().map_err(|_| invalid(format!("expected an integer, got `{w}`"))))
        .collect()
}

fn keyword<'a>(line: &'a str, key: &str) -> Result<&'a str> {
    let rest = line
        .strip_prefix(key)
        .ok_or_else(|| invalid(format!("expected `{key}`, got `{line}`")))?;
    if !rest.is_empty() && !rest.starts_with(' ') {
        return Err(invalid(format!("expected `{key}`, got `{line}`")));
    }
    Ok(rest.trim())
}

fn rows(it: &mut std::slice::Iter<'_, &str>, n: usize, what: &str) -> Result<Vec<Vec<usize>>> {
    (0..n)
        .map(|i| {
            let l = it.next().ok_or_else(|| invalid(format!("{what}: missing row {i}")))?;
            ints(l)
        })
        .collect()
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// `group <name>` then `order <n>` and `table`, or `perm <degree>` and `gen` lines.
pub fn parse_group(text: &str) -> Result<(String, GroupSpec)> {
    let ls = lines(text);
    let mut it = ls.iter();
    let name = keyword(it.next().ok_or_else(|| invalid("empty group description"))?, "group")?.to_string();
    if name.is_empty() {
        return Err(invalid("group needs a name"));
    }
    let next = it.next().ok_or_else(|| invalid("group description ends early"))?;
    if let Ok(n) = keyword(next, "order") {
        let n: usize = n.parse().map_err(|_| invalid("order must be an integer"))?;
        let t = it.next().ok_or_else(|| invalid("missing `table`"))?;
        keyword(t, "table")?;
        let table = rows(&mut it, n, "table")?;
        if let Some(extra) = it.next() {
            return Err(invalid(format!("unexpected line `{extra}`")));
        }
        return Ok((name, GroupSpec::Table(table)));
    }
    let degree: usize = keyword(next, "perm")?
        .parse()
        .map_err(|_| invalid("perm degree must be an integer"))?;
    let gens = it.map(|l| ints(keyword(l, "gen")?)).collect::<Result<Vec<_>>>()?;
    Ok((name, GroupSpec::Perm { degree, gens }))
}

pub fn print_group(name: &str, spec: &GroupSpec) -> String {
    let mut out = format!("group {name}\n");
    match spec {
        GroupSpec::Table(t) => {
            out.push_str(&format!("order {}\ntable\n", t.len()));
            for r in t {
                out.push_str(&join(r));
                out.push('\n');
            }
        }
        GroupSpec::Perm { degree, gens } => {
            out.push_str(&format!("perm {degree}\n"));
            for g in gens {
                out.push_str(&format!("gen {}\n", join(g)));
            }
        }
    }
    out
}

pub fn load_group(text: &str, order_cap: usize) -> Result<Group> {
    let (name, spec) = parse_group(text)?;
    Group::build(&name, &spec, order_cap)
}

/// Named G-sets and G-maps read from one file of `gset` and `gmap` blocks.
#[derive(Clone, Debug, Default)]
pub struct Bundle {
    pub gsets: BTreeMap<String, GSet>,
    /// Maps keyed by `src->dst`, in file order within each key.
    pub gmaps: Vec<(String, String, GMap)>,
}

impl Bundle {
    pub fn gset(&self, name: &str) -> Result<&GSet> {
        self.gsets.get(name).ok_or_else(|| invalid(format!("no G-set named `{name}`")))
    }

    /// The first map `src -> dst`, or the map at position `k` when given as `src->dst#k`.
    pub fn gmap(&self, key: &str) -> Result<&GMap> {
        let (pair, k) = match key.split_once('#') {
            Some((p, k)) => (p, k.parse().map_err(|_| invalid(format!("bad map index in `{key}`")))?),
            None => (key, 0usize),
        };
        let (s, d) = pair
            .split_once("->")
            .ok_or_else(|| invalid(format!("maps are named `src->dst`, got `{key}`")))?;
        self.gmaps
            .iter()
            .filter(|(a, b, _)| a == s.trim() && b == d.trim())
            .nth(k)
            .map(|(_, _, m)| m)
            .ok_or_else(|| invalid(format!("no map `{key}`")))
    }
}

/// Blocks `gset <name> over <group>` / `size <n>` / `action` and `gmap <src> -> <dst>` / `images …`.
pub fn parse_bundle(text: &str, group: &Arc<Group>) -> Result<Bundle> {
    let ls = lines(text);
    let mut b = Bundle::default();
    let mut i = 0;
    while i < ls.len() {
        if let Ok(head) = keyword(ls[i], "gset") {
            let (name, over) = head
                .split_once(" over ")
                .ok_or_else(|| invalid("expected `gset <name> over <group>`"))?;
            if over.trim() != group.name {
                return Err(invalid(format!("G-set over `{}` read with group `{}`", over.trim(), group.name)));
            }
            let size: usize = keyword(ls.get(i + 1).copied().unwrap_or(""), "size")?
                .parse()
                .map_err(|_| invalid("size must be an integer"))?;
            keyword(ls.get(i + 2).copied().unwrap_or(""), "action")?;
            let n = group.order();
            if ls.len() < i + 3 + n {
                return Err(invalid(format!("G-set `{name}` needs {n} action rows")));
            }
            let rows = ls[i + 3..i + 3 + n].iter().map(|l| ints(l)).collect::<Result<Vec<_>>>()?;
            if rows.iter().any(|r| r.len() != size) {
                return Err(invalid(format!("action rows of `{name}` must have {size} entries")));
            }
            let x = GSet::new(group.clone(), &rows)?.with_label(name.trim());
            if b.gsets.insert(name.trim().to_string(), x).is_some() {
                return Err(invalid(format!("G-set `{name}` defined twice")));
            }
            i += 3 + n;
        } else if let Ok(head) = keyword(ls[i], "gmap") {
            let (s, d) = head
                .split_once("->")
                .ok_or_else(|| invalid("expected `gmap <src> -> <dst>`"))?;
            let (s, d) = (s.trim().to_string(), d.trim().to_string());
            let images = ints(keyword(ls.get(i + 1).copied().unwrap_or(""), "images")?)?;
            let m = GMap::new(b.gset(&s)?.clone(), b.gset(&d)?.clone(), images)?;
            b.gmaps.push((s, d, m));
            i += 2;
        } else {
            return Err(invalid(format!("expected `gset` or `gmap`, got `{}`", ls[i])));
        }
    }
    Ok(b)
}

pub fn print_gset(name: &str, x: &GSet) -> String {
    let mut out = format!("gset {name} over {}\nsize {}\naction\n", x.group().name, x.size());
    for r in x.rows() {
        out.push_str(&join(&r));
        out.push('\n');
    }
    out
}

pub fn print_gmap(src: &str, dst: &str, f: &GMap) -> String {
    format!("gmap {src} -> {dst}\nimages {}\n", join(&f.images))
}

pub fn print_bundle(b: &Bundle) -> String {
    let mut parts: Vec<String> = b.gsets.iter().map(|(n, x)| print_gset(n, x)).collect();
    parts.extend(b.gmaps.iter().map(|(s, d, m)| print_gmap(s, d, m)));
    parts.join("\n")
}

/// `gring <name> over <group>` / `elements <n>` / optional `labels` / `add` / `mul` / `action`.
pub fn parse_gring(text: &str, group: &Arc<Group>) -> Result<GRing> {
    let ls = lines(text);
    let mut it = ls.iter();
    let head = keyword(it.next().ok_or_else(|| invalid("empty G-ring description"))?, "gring")?;
    let (name, over) = head
        .split_once(" over ")
        .ok_or_else(|| invalid("expected `gring <name> over <group>`"))?;
    if over.trim() != group.name {
        return Err(invalid(format!("G-ring over `{}` read with group `{}`", over.trim(), group.name)));
    }
    let n: usize = keyword(it.next().ok_or_else(|| invalid("missing `elements`"))?, "elements")?
        .parse()
        .map_err(|_| invalid("elements must be an integer"))?;
    let mut next = it.next().ok_or_else(|| invalid("missing `add`"))?;
    let mut labels = None;
    if let Ok(ls) = keyword(next, "labels") {
        let l: Vec<String> = ls.split_whitespace().map(String::from).collect();
        if l.len() != n {
            return Err(invalid(format!("expected {n} labels")));
        }
        labels = Some(l);
        next = it.next().ok_or_else(|| invalid("missing `add`"))?;
    }
    keyword(next, "add")?;
    let add = rows(&mut it, n, "add")?;
    keyword(it.next().ok_or_else(|| invalid("missing `mul`"))?, "mul")?;
    let mul = rows(&mut it, n, "mul")?;
    keyword(it.next().ok_or_else(|| invalid("missing `action`"))?, "action")?;
    let action = rows(&mut it, group.order(), "action")?;
    if let Some(extra) = it.next() {
        return Err(invalid(format!("unexpected line `{extra}`")));
    }
    let ring = FiniteRing::from_tables(&add, &mul, labels)?;
    GRing::new(name.trim(), group.clone(), ring, action)
}

pub fn print_gring(r: &GRing) -> String {
    let n = r.ring.size();
    let mut out = format!("gring {} over {}\nelements {n}\n", r.name, r.group.name);
    let default: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    if r.ring.labels() != default.as_slice() {
        out.push_str(&format!("labels {}\n", r.ring.labels().join(" ")));
    }
    for (key, table) in [("add", r.ring.add_table()), ("mul", r.ring.mul_table())] {
        out.push_str(key);
        out.push('\n');
        for row in table {
            out.push_str(&join(&row));
            out.push('\n');
        }
    }
    out.push_str("action\n");
    for row in &r.action {
        out.push_str(&join(row));
        out.push('\n');
    }
    out
}

/// The functor descriptor and group named in an ideal file header
/// `ideal over <functor> on <group>`.
pub fn ideal_header(text: &str) -> Result<(String, String)> {
    let ls = lines(text);
    let head = keyword(ls.first().copied().unwrap_or(""), "ideal over")?;
    let (f, g) = head
        .rsplit_once(" on ")
        .ok_or_else(|| invalid("expected `ideal over <functor> on <group>`"))?;
    Ok((f.trim().to_string(), g.trim().to_string()))
}

/// Split at top-level commas, outside parentheses.
fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    let last = s[start..].trim();
    if !last.is_empty() {
        out.push(last);
    }
    out
}

/// Level ideals from `level <H>: {elem, …}` (the ideal they generate) or
/// `level <H>: lattice [v1; v2; …]` (the lattice exactly as given). Missing
/// levels are zero.
pub fn parse_ideal(text: &str, t: &dyn Tambara) -> Result<Vec<LevelIdeal>> {
    let g = t.group();
    let mut levels: Vec<Option<LevelIdeal>> = vec![None; t.num_levels()];
    for l in lines(text).into_iter().skip(1) {
        let rest = keyword(l, "level")?;
        let (h, body) = rest
            .split_once(':')
            .ok_or_else(|| invalid(format!("expected `level <H>: …`, got `{l}`")))?;
        let c = g
            .class_by_name(h.trim())
            .ok_or_else(|| invalid(format!("unknown subgroup class `{}`", h.trim())))?;
        let r = t.level(c);
        let body = body.trim();
        let ideal = if let Some(inner) = body.strip_prefix('{').and_then(|b| b.strip_suffix('}')) {
            let gens = split_top(inner).into_iter().map(|e| r.parse(e)).collect::<Result<Vec<_>>>()?;
            LevelIdeal::generate(r, &gens)
        } else if let Some(inner) = body
            .strip_prefix("lattice")
            .map(str::trim)
            .and_then(|b| b.strip_prefix('['))
            .and_then(|b| b.strip_suffix(']'))
        {
            let LevelRing::Lattice(lr) = r else {
                return Err(invalid(format!("level {} is not a lattice ring", h.trim())));
            };
            let mut vs: Vec<Vec<i64>> = inner
                .split(';')
                .map(str::trim)
                .filter(|v| !v.is_empty())
                .map(|v| {
                    v.split_whitespace()
                        .map(|w| w.parse().map_err(|_| invalid(format!("bad lattice entry `{w}`"))))
                        .collect::<Result<Vec<i64>>>()
                })
                .collect::<Result<_>>()?;
            if vs.iter().any(|v| v.len() != lr.dim()) {
                return Err(invalid(format!("lattice vectors at level {} need {} entries", h.trim(), lr.dim())));
            }
            vs.extend(lr.modulus().basis().iter().cloned());
            LevelIdeal::Lattice(Lattice::from_generators(lr.dim(), &vs))
        } else {
            return Err(invalid(format!("expected `{{…}}` or `lattice […]`, got `{body}`")));
        };
        if levels[c].replace(ideal).is_some() {
            return Err(invalid(format!("level {} given twice", h.trim())));
        }
    }
    Ok(levels
        .into_iter()
        .enumerate()
        .map(|(c, l)| l.unwrap_or_else(|| LevelIdeal::zero(t.level(c))))
        .collect())
}

pub fn print_ideal(descriptor: &str, t: &dyn Tambara, levels: &[LevelIdeal]) -> String {
    let g = t.group();
    let mut out = format!("ideal over {descriptor} on {}\n", g.name);
    for (c, i) in levels.iter().enumerate() {
        let r = t.level(c);
        let body = match i {
            LevelIdeal::Lattice(l) => {
                let vs: Vec<String> = l.basis().iter().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")).collect();
                format!("lattice [{}]", vs.join("; "))
            }
            _ => {
                let gens: Vec<String> = i.generators(r).iter().map(|x| r.format(x)).collect();
                format!("{{{}}}", gens.join(", "))
            }
        };
        out.push_str(&format!("level {}: {body}\n", g.class_name(c)));
    }
    out
}

/// Parse an element literal, with an optional `<level>:` prefix naming the class.
pub fn parse_element(t: &dyn Tambara, default_class: Option<usize>, s: &str) -> Result<(usize, Elem)> {
    let g = t.group();
    let (class, body) = match s.split_once(':') {
        Some((h, rest)) if !h.contains('(') && !h.contains('[') => {
            let h = h.split_whitespace().last().unwrap_or("");
            let c = g.class_by_name(h).ok_or_else(|| invalid(format!("unknown subgroup class `{h}`")))?;
            (c, rest)
        }
        _ => (default_class.ok_or_else(|| invalid("the element needs a `<H>:` level prefix"))?, s),
    };
    Ok((class, t.level(class).parse(body)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burnside::OmegaFunctor;
    use crate::group::{builtin, builtin_spec};

    #[test]
    fn group_round_trip() {
        for name in ["c2", "s3"] {
            let spec = builtin_spec(name).unwrap();
            let text = print_group(name, &spec);
            assert_eq!(parse_group(&text).unwrap(), (name.to_string(), spec.clone()));
            let g = Group::build(name, &spec, 24).unwrap();
            let table = GroupSpec::Table(g.table.table());
            let t2 = print_group(name, &table);
            assert_eq!(print_group(name, &parse_group(&t2).unwrap().1), t2);
        }
    }

    #[test]
    fn bundle_round_trip() {
        let g = Arc::new(builtin("c2").unwrap());
        let text = "gset X over c2\nsize 2\naction\n0 1\n1 0\n\ngset Y over c2\nsize 1\naction\n0\n0\n\ngmap X -> Y\nimages 0 0\n";
        let b = parse_bundle(text, &g).unwrap();
        assert_eq!(print_bundle(&b), text);
        assert_eq!(b.gmap("X->Y").unwrap().degree(), 2);
    }

    #[test]
    fn gring_round_trip() {
        let g = Arc::new(builtin("c2").unwrap());
        let r = GRing::prodfield(g.clone(), 2, 2, true).unwrap();
        let text = print_gring(&r);
        let back = parse_gring(&text, &g).unwrap();
        assert_eq!(print_gring(&back), text);
        assert_eq!(back.action, r.action);
    }

    #[test]
    fn ideal_round_trip() {
        let g = Arc::new(builtin("c2").unwrap());
        let omega = OmegaFunctor::new(g).unwrap();
        let text = "ideal over omega on c2\nlevel e: {2}\nlevel G: {2*[G/G]}\n";
        assert_eq!(ideal_header(text).unwrap(), ("omega".into(), "c2".into()));
        let levels = parse_ideal(text, &omega).unwrap();
        let printed = print_ideal("omega", &omega, &levels);
        assert_eq!(printed, "ideal over omega on c2\nlevel e: lattice [2]\nlevel G: lattice [2 0; 0 2]\n");
        assert_eq!(parse_ideal(&printed, &omega).unwrap(), levels);
        let (c, x) = parse_element(&omega, None, "omega G: 2*[G/G] + -1*[G/e]").unwrap();
        assert_eq!((c, x), (1, Elem(vec![-1, 2])));
    }
}
