//! Generators shared by the property suites.
#![allow(dead_code)]

use proptest::prelude::*;

/// Text over a tiny line alphabet so that generated versions overlap.
pub fn line_text() -> impl Strategy<Value = Vec<u8>> {
    (
        prop::collection::vec(prop::sample::select(vec!["a", "b", "c", "d", "e", ""]), 0..10),
        any::<bool>(),
    )
        .prop_map(|(lines, terminated)| {
            let mut out = lines.join("\n").into_bytes();
            if terminated && !lines.is_empty() {
                out.push(b'\n');
            }
            out
        })
}

/// A base text and two variants derived from it by line edits.
pub fn related_triple() -> impl Strategy<Value = (Vec<u8>, Vec<u8>, Vec<u8>)> {
    line_text().prop_flat_map(|base| {
        let b = base.clone();
        (Just(b), edited(base.clone()), edited(base))
    })
}

fn edited(base: Vec<u8>) -> impl Strategy<Value = Vec<u8>> {
    let lines: Vec<String> = String::from_utf8(base.clone())
        .unwrap()
        .split_inclusive('\n')
        .map(String::from)
        .collect();
    let n = lines.len();
    prop::collection::vec(
        (0..=n, 0..3u8, prop::sample::select(vec!["x\n", "y\n", "a\n", "z", ""])),
        0..4,
    )
    .prop_map(move |ops| {
        let mut out = lines.clone();
        for (at, op, text) in ops {
            let at = at.min(out.len());
            match op {
                0 => out.insert(at, text.into()),
                1 if at < out.len() => {
                    out.remove(at);
                }
                _ if at < out.len() => out[at] = text.into(),
                _ => {}
            }
        }
        out.concat().into_bytes()
    })
}

fn string_literal() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(vec!["{", "}", "(", ")", ";", "a", " ", "\\\"", "\\\\", "$"]), 0..6)
        .prop_map(|parts| format!("\"{}\"", parts.concat()))
}

fn char_literal() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["'{'", "'}'", "'('", "')'", "';'", "'\\''", "'\"'", "'a'"]).prop_map(String::from)
}

fn line_comment(newline: &'static str) -> impl Strategy<Value = String> {
    prop::sample::select(vec!["// {", "// ) ;", "//", "// see f(x);"]).prop_map(move |c| format!("{c}{newline}"))
}

fn block_comment() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["/* { */", "/* ; ( */", "/** doc\n * } \n */", "/**/", "/* \r\n ) */"])
        .prop_map(String::from)
}

/// Java-like code fragments: separators in code and inside literals and
/// comments, LF and CRLF line ends, and `$` runs.
pub fn java_snippet() -> impl Strategy<Value = Vec<u8>> {
    let newline = prop::sample::select(vec!["\n", "\r\n"]);
    newline.prop_flat_map(|nl| {
        let fragment = prop_oneof![
            4 => prop::sample::select(vec!["x", "foo", "Bar", "i", "42", "a.b", "$", "$$$$$$$$$", "_v"]).prop_map(String::from),
            4 => prop::sample::select(vec!["{", "}", "(", ")", ";"]).prop_map(String::from),
            3 => prop::sample::select(vec![" ", "  ", "\t", " = ", ", ", " + "]).prop_map(String::from),
            2 => Just(nl.to_string()),
            1 => string_literal(),
            1 => char_literal(),
            1 => line_comment(nl),
            1 => block_comment(),
            1 => Just("\"\"\"\n  { x; }\n  \"\"\"".to_string()),
        ];
        prop::collection::vec(fragment, 0..40).prop_map(|parts| parts.concat().into_bytes())
    })
}

/// Like [`java_snippet`] but every separator sits in a literal or comment.
pub fn hidden_separator_snippet() -> impl Strategy<Value = Vec<u8>> {
    let fragment = prop_oneof![
        prop::sample::select(vec!["x", "foo", " ", "\n", "\r\n", " = ", "+"]).prop_map(String::from),
        string_literal(),
        char_literal(),
        line_comment("\n"),
        block_comment(),
    ];
    // spaced out so adjacent quotes cannot open a text block
    prop::collection::vec(fragment, 0..30).prop_map(|parts| parts.join(" ").into_bytes())
}

/// Statements of a method body over a small vocabulary, one per line.
pub fn statements() -> impl Strategy<Value = Vec<&'static str>> {
    prop::collection::vec(
        prop::sample::select(vec![
            "x = 1;",
            "x = 2;",
            "call(a, b);",
            "call(a, \"{\");",
            "if (x > 0) { y(); }",
            "if (x > 0) { z(); }",
            "if (x >= 1) { y(); }",
            "list.add(item); // add",
            "return x;",
            "s = '{';",
        ]),
        0..5,
    )
}

#[derive(Clone, Debug)]
pub struct Member {
    pub name: String,
    pub body: Vec<&'static str>,
    pub field: bool,
}

impl Member {
    pub fn render(&self, nl: &str) -> String {
        if self.field {
            return format!("    private int {} = 0;{nl}", self.name);
        }
        let mut s = format!("    void {}(int a) {{{nl}", self.name);
        for st in &self.body {
            s.push_str(&format!("        {st}{nl}"));
        }
        s.push_str(&format!("    }}{nl}"));
        s
    }
}

pub fn member(name: String) -> impl Strategy<Value = Member> {
    (statements(), prop::bool::weighted(0.2)).prop_map(move |(body, field)| Member {
        name: name.clone(),
        body,
        field,
    })
}

pub fn class_source(members: &[Member], nl: &str, blank_lines: bool, final_newline: bool) -> Vec<u8> {
    let mut s = format!("package p;{nl}{nl}import java.util.List;{nl}{nl}/** Generated. */{nl}public class C {{{nl}");
    for (i, m) in members.iter().enumerate() {
        if blank_lines && i > 0 {
            s.push_str(nl);
        }
        s.push_str(&m.render(nl));
    }
    s.push('}');
    if final_newline {
        s.push_str(nl);
    }
    s.into_bytes()
}

/// A generated class file with distinct member names.
pub fn class_file() -> impl Strategy<Value = Vec<u8>> {
    (
        prop::collection::vec(member(String::new()), 0..6),
        prop::sample::select(vec!["\n", "\r\n"]),
        any::<bool>(),
        any::<bool>(),
    )
        .prop_map(|(mut members, nl, blank, fin)| {
            for (i, m) in members.iter_mut().enumerate() {
                m.name = format!("m{i}");
            }
            class_source(&members, nl, blank, fin)
        })
}

/// Base members plus independent class-level edits on both sides.
#[derive(Clone, Debug)]
pub struct ClassEdits {
    pub base: Vec<Member>,
    pub left: Vec<Member>,
    pub right: Vec<Member>,
}

/// Each side may delete base members, edit base bodies and add new members.
/// With `one_sided_bodies`, no base member body is changed by both sides.
pub fn class_edits(one_sided_bodies: bool) -> impl Strategy<Value = ClassEdits> {
    prop::collection::vec(member(String::new()), 1..5).prop_flat_map(move |mut base| {
        for (i, m) in base.iter_mut().enumerate() {
            m.name = format!("base{i}");
        }
        let n = base.len();
        let side = |prefix: &'static str| {
            (
                prop::collection::vec(0..3u8, n),
                prop::collection::vec(statements(), n),
                prop::collection::vec((0..=n, member(String::new())), 0..3),
            )
                .prop_map(move |(ops, bodies, adds)| (prefix, ops, bodies, adds))
        };
        (Just(base), side("l"), side("r"))
    })
    .prop_map(move |(base, l, r)| {
        let build = |(prefix, ops, bodies, adds): (&str, Vec<u8>, Vec<Vec<&'static str>>, Vec<(usize, Member)>),
                     allow_edit: &dyn Fn(usize) -> bool| {
            let mut out: Vec<Option<Member>> = base.iter().cloned().map(Some).collect();
            for (i, op) in ops.iter().enumerate() {
                match op {
                    1 => out[i] = None,
                    2 if allow_edit(i) && !base[i].field => {
                        out[i].as_mut().unwrap().body = bodies[i].clone();
                    }
                    _ => {}
                }
            }
            let mut placed: Vec<Member> = Vec::new();
            let mut extra: Vec<Vec<Member>> = vec![Vec::new(); base.len() + 1];
            for (k, (at, mut m)) in adds.into_iter().enumerate() {
                m.name = format!("{prefix}{k}");
                extra[at].push(m);
            }
            placed.extend(extra[0].drain(..));
            for (i, m) in out.into_iter().enumerate() {
                placed.extend(m);
                placed.extend(extra[i + 1].drain(..));
            }
            placed
        };
        let left = build(l, &|i| !one_sided_bodies || i % 2 == 0);
        let right = build(r, &|i| !one_sided_bodies || i % 2 == 1);
        ClassEdits { base, left, right }
    })
}
