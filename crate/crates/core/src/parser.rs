//! Shallow Java parser.
//!
//! Builds a partial syntax tree that stops at class members: package and
//! import declarations, type declarations, and the fields, methods,
//! constructors, initializer blocks, enum constants and annotation members
//! they contain. Member bodies are kept as verbatim text.
//!
//! Node text always covers a contiguous byte range of the source. A node owns
//! the comments and whitespace that precede it, and the rest of its last line
//! when only blanks or a line comment follow. Printing a parsed tree therefore
//! reproduces the input exactly.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::lexer::{Lexer, Token, TokenKind};
use crate::merge::{render, MergeOutcome, RenderOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DeclKind {
    CompilationUnit,
    Package,
    Import,
    TypeDecl,
    Field,
    Method,
    Constructor,
    InitializerBlock,
    EnumConstant,
    AnnotationMember,
}

impl DeclKind {
    /// Kinds whose relative order matters. They are merged as one text block
    /// instead of being matched one by one.
    pub fn is_ordered(self) -> bool {
        matches!(self, DeclKind::Package | DeclKind::Import | DeclKind::EnumConstant)
    }

    pub fn name(self) -> &'static str {
        match self {
            DeclKind::CompilationUnit => "compilation-unit",
            DeclKind::Package => "package",
            DeclKind::Import => "import",
            DeclKind::TypeDecl => "type-decl",
            DeclKind::Field => "field",
            DeclKind::Method => "method",
            DeclKind::Constructor => "constructor",
            DeclKind::InitializerBlock => "initializer-block",
            DeclKind::EnumConstant => "enum-constant",
            DeclKind::AnnotationMember => "annotation-member",
        }
    }
}

impl fmt::Display for DeclKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Text held by a node: verbatim source, or the outcome of merging it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeText {
    Plain(Vec<u8>),
    Merged(MergeOutcome),
}

impl NodeText {
    pub fn empty() -> Self {
        NodeText::Plain(Vec::new())
    }

    pub fn plain(&self) -> Option<&[u8]> {
        match self {
            NodeText::Plain(t) => Some(t),
            NodeText::Merged(_) => None,
        }
    }

    pub fn conflict_count(&self) -> usize {
        match self {
            NodeText::Plain(_) => 0,
            NodeText::Merged(o) => o.conflict_count(),
        }
    }

    fn write(&self, out: &mut Vec<u8>, options: &RenderOptions) {
        match self {
            NodeText::Plain(t) => out.extend_from_slice(t),
            NodeText::Merged(o) => out.extend(render(o, options)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeclNode {
    pub kind: DeclKind,
    /// Matching key among siblings of the same kind.
    pub identifier: String,
    /// Leading trivia and the declaration up to its body, or the whole
    /// declaration for bodiless kinds.
    pub header: NodeText,
    pub children: Vec<DeclNode>,
    /// The body from its opening `{`; for type declarations, the trailing
    /// trivia and closing `}` after the last member.
    pub body: NodeText,
}

impl DeclNode {
    pub fn new(kind: DeclKind, identifier: impl Into<String>, header: Vec<u8>, body: Vec<u8>) -> Self {
        DeclNode {
            kind,
            identifier: identifier.into(),
            header: NodeText::Plain(header),
            children: Vec::new(),
            body: NodeText::Plain(body),
        }
    }

    /// The node's full text with conflicts rendered using default options.
    pub fn text(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.write(&mut out, &RenderOptions::default());
        out
    }

    pub fn conflict_count(&self) -> usize {
        self.header.conflict_count()
            + self.body.conflict_count()
            + self.children.iter().map(DeclNode::conflict_count).sum::<usize>()
    }

    fn write(&self, out: &mut Vec<u8>, options: &RenderOptions) {
        self.header.write(out, options);
        for child in &self.children {
            child.write(out, options);
        }
        self.body.write(out, options);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeclTree {
    pub root: DeclNode,
}

impl DeclTree {
    pub fn conflict_count(&self) -> usize {
        self.root.conflict_count()
    }
}

/// A method or constructor matching key: name plus erased parameter types.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    pub name: String,
    pub parameter_types: Vec<String>,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.name)?;
        for (i, t) in self.parameter_types.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(t)?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnterminatedLiteral,
    UnterminatedComment,
    UnexpectedEof,
    UnexpectedToken,
    UnbalancedBrace,
    DuplicateDeclaration(DeclKind, String),
    /// A package, import or enum constant after an ordinary member.
    MisplacedOrdered,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset where the problem was detected.
    pub offset: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::UnterminatedLiteral => write!(f, "unterminated literal at byte {}", self.offset),
            ParseErrorKind::UnterminatedComment => write!(f, "unterminated comment at byte {}", self.offset),
            ParseErrorKind::UnexpectedEof => f.write_str("unexpected end of file"),
            ParseErrorKind::UnexpectedToken => write!(f, "unexpected token at byte {}", self.offset),
            ParseErrorKind::UnbalancedBrace => write!(f, "unbalanced brace at byte {}", self.offset),
            ParseErrorKind::DuplicateDeclaration(kind, id) => {
                write!(f, "duplicate {kind} `{id}` at byte {}", self.offset)
            }
            ParseErrorKind::MisplacedOrdered => {
                write!(f, "ordered declaration after members at byte {}", self.offset)
            }
        }
    }
}

impl core::error::Error for ParseError {}

/// Parses a Java source file into a declaration tree.
pub fn parse_units(source: &[u8]) -> Result<DeclTree, ParseError> {
    let tokens: Vec<Token> = Lexer::new(source).collect();
    for t in &tokens {
        if !t.kind.is_terminated() {
            let kind = match t.kind {
                TokenKind::BlockComment { .. } => ParseErrorKind::UnterminatedComment,
                _ => ParseErrorKind::UnterminatedLiteral,
            };
            return Err(ParseError {
                kind,
                offset: t.span.start,
            });
        }
    }
    let parser = Parser {
        src: source,
        tokens,
    };
    let (children, footer_start, _) = parser.members(&Scope::CompilationUnit, 0, 0)?;
    let mut root = DeclNode::new(
        DeclKind::CompilationUnit,
        "",
        Vec::new(),
        source[footer_start..].to_vec(),
    );
    root.children = children;
    Ok(DeclTree { root })
}

/// Prints a tree, rendering any merged text with `options`.
pub fn print_units(tree: &DeclTree, options: &RenderOptions) -> Vec<u8> {
    let mut out = Vec::new();
    tree.root.write(&mut out, options);
    out
}

enum Scope {
    CompilationUnit,
    Type {
        name: String,
        annotation: bool,
        enumeration: bool,
    },
}

struct Parser<'a> {
    src: &'a [u8],
    tokens: Vec<Token>,
}

fn err<T>(kind: ParseErrorKind, offset: usize) -> Result<T, ParseError> {
    Err(ParseError { kind, offset })
}

impl<'a> Parser<'a> {
    fn text(&self, t: usize) -> &'a [u8] {
        &self.src[self.tokens[t].span.clone()]
    }

    fn is_punct(&self, t: usize, c: u8) -> bool {
        self.tokens.get(t).map(|tok| tok.kind) == Some(TokenKind::Punct(c))
    }

    fn is_word(&self, t: usize, w: &str) -> bool {
        self.tokens.get(t).map(|tok| tok.kind) == Some(TokenKind::Ident) && self.text(t) == w.as_bytes()
    }

    /// Index of the first non-trivia token at or after `t`.
    fn significant(&self, mut t: usize) -> Option<usize> {
        while t < self.tokens.len() {
            if !self.tokens[t].kind.is_trivia() {
                return Some(t);
            }
            t += 1;
        }
        None
    }

    fn next_sig(&self, t: usize) -> Option<usize> {
        self.significant(t + 1)
    }

    /// Index of the first token whose span ends after byte `offset`.
    fn token_at(&self, offset: usize) -> usize {
        self.tokens.partition_point(|t| t.span.end <= offset)
    }

    /// Extends a node ending at `end` over trailing blanks, an optional line
    /// comment and one line break, if nothing else follows on that line.
    fn line_tail(&self, end: usize) -> usize {
        let src = self.src;
        let mut i = end;
        while i < src.len() && (src[i] == b' ' || src[i] == b'\t') {
            i += 1;
        }
        if src[i..].starts_with(b"//") {
            while i < src.len() && src[i] != b'\n' {
                i += 1;
            }
        }
        if i == src.len() {
            i
        } else if src[i] == b'\n' {
            i + 1
        } else if src[i..].starts_with(b"\r\n") {
            i + 2
        } else {
            end
        }
    }

    /// Index of the token closing the group opened at `open`.
    fn matching(&self, open: usize) -> Result<usize, ParseError> {
        let mut depth = 0usize;
        for t in open..self.tokens.len() {
            match self.tokens[t].kind {
                TokenKind::Punct(b'(' | b'[' | b'{') => depth += 1,
                TokenKind::Punct(b')' | b']' | b'}') => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok(t);
                    }
                }
                _ => {}
            }
        }
        err(ParseErrorKind::UnbalancedBrace, self.tokens[open].span.start)
    }

    /// Parses declarations until EOF (compilation unit) or the `}` closing a
    /// type body. Returns the children, the byte where the trailing trivia
    /// starts, and the index of the closing `}` (or the token count).
    fn members(&self, scope: &Scope, mut cur: usize, mut tok: usize) -> Result<(Vec<DeclNode>, usize, usize), ParseError> {
        let mut children: Vec<DeclNode> = Vec::new();
        let mut initializers = [0usize; 2];

        if let Scope::Type { enumeration: true, .. } = scope {
            let (constants, next_cur, next_tok) = self.enum_constants(cur, tok)?;
            children.extend(constants);
            cur = next_cur;
            tok = next_tok;
        }

        loop {
            let Some(t) = self.significant(tok) else {
                return match scope {
                    Scope::CompilationUnit => Ok((children, cur, self.tokens.len())),
                    Scope::Type { .. } => err(ParseErrorKind::UnexpectedEof, self.src.len()),
                };
            };
            match self.tokens[t].kind {
                TokenKind::Punct(b'}') => {
                    return match scope {
                        Scope::Type { .. } => Ok((children, cur, t)),
                        Scope::CompilationUnit => err(ParseErrorKind::UnbalancedBrace, self.tokens[t].span.start),
                    };
                }
                // Stray semicolons stay in the next node's leading trivia.
                TokenKind::Punct(b';') => {
                    tok = t + 1;
                    continue;
                }
                _ => {}
            }
            let (node, end, next_tok) = self.declaration(scope, cur, t, &mut initializers)?;
            if node.kind.is_ordered() && children.last().is_some_and(|c| !c.kind.is_ordered()) {
                return err(ParseErrorKind::MisplacedOrdered, self.tokens[t].span.start);
            }
            if children.iter().any(|c| c.kind == node.kind && c.identifier == node.identifier) {
                return err(
                    ParseErrorKind::DuplicateDeclaration(node.kind, node.identifier),
                    self.tokens[t].span.start,
                );
            }
            children.push(node);
            cur = end;
            tok = next_tok;
        }
    }

    /// Parses the constant list at the start of an enum body.
    fn enum_constants(&self, mut cur: usize, mut tok: usize) -> Result<(Vec<DeclNode>, usize, usize), ParseError> {
        let mut constants: Vec<DeclNode> = Vec::new();
        loop {
            let Some(t) = self.significant(tok) else {
                return err(ParseErrorKind::UnexpectedEof, self.src.len());
            };
            if self.is_punct(t, b'}') {
                return Ok((constants, cur, t));
            }
            if self.is_punct(t, b';') {
                if let Some(last) = constants.last_mut() {
                    // The list terminator belongs to the last constant.
                    let end = self.line_tail(self.tokens[t].span.end);
                    extend_node(last, &self.src[cur..end]);
                    return Ok((constants, end, self.token_at(end)));
                }
                return Ok((constants, cur, t + 1));
            }
            // annotations, name, optional arguments, optional class body
            let mut u = t;
            while self.is_punct(u, b'@') {
                u = self.skip_annotation(u)?;
            }
            if self.tokens.get(u).map(|k| k.kind) != Some(TokenKind::Ident) {
                return err(ParseErrorKind::UnexpectedToken, self.offset(u));
            }
            let name = String::from_utf8_lossy(self.text(u)).into_owned();
            let mut last = u;
            let mut body_start = None;
            let mut next = self.next_sig(u);
            if let Some(n) = next.filter(|&n| self.is_punct(n, b'(')) {
                last = self.matching(n)?;
                next = self.next_sig(last);
            }
            if let Some(n) = next.filter(|&n| self.is_punct(n, b'{')) {
                body_start = Some(self.tokens[n].span.start);
                last = self.matching(n)?;
                next = self.next_sig(last);
            }
            let mut ends_list = false;
            match next {
                Some(n) if self.is_punct(n, b',') => last = n,
                Some(n) if self.is_punct(n, b';') => {
                    last = n;
                    ends_list = true;
                }
                Some(n) if self.is_punct(n, b'}') => ends_list = true,
                Some(n) => return err(ParseErrorKind::UnexpectedToken, self.offset(n)),
                None => return err(ParseErrorKind::UnexpectedEof, self.src.len()),
            }
            let end = self.line_tail(self.tokens[last].span.end);
            let split = body_start.unwrap_or(end);
            let node = DeclNode::new(
                DeclKind::EnumConstant,
                name,
                self.src[cur..split].to_vec(),
                self.src[split..end].to_vec(),
            );
            if constants.iter().any(|c| c.identifier == node.identifier) {
                return err(
                    ParseErrorKind::DuplicateDeclaration(DeclKind::EnumConstant, node.identifier),
                    self.offset(u),
                );
            }
            constants.push(node);
            cur = end;
            tok = self.token_at(end).max(last + 1);
            if ends_list {
                return Ok((constants, cur, tok));
            }
        }
    }

    fn offset(&self, t: usize) -> usize {
        self.tokens.get(t).map_or(self.src.len(), |k| k.span.start)
    }

    /// Skips `@Name`, `@a.b.Name` and `@Name(...)`; returns the next
    /// significant token index.
    fn skip_annotation(&self, at: usize) -> Result<usize, ParseError> {
        let mut t = self.next_sig(at).ok_or(ParseError {
            kind: ParseErrorKind::UnexpectedEof,
            offset: self.src.len(),
        })?;
        loop {
            let Some(n) = self.next_sig(t) else {
                return Ok(self.tokens.len());
            };
            if self.is_punct(n, b'.') {
                t = self.next_sig(n).unwrap_or(self.tokens.len());
                continue;
            }
            if self.is_punct(n, b'(') {
                let close = self.matching(n)?;
                return Ok(self.next_sig(close).unwrap_or(self.tokens.len()));
            }
            return Ok(n);
        }
    }

    /// Significant header tokens from `start` to `end`, annotations removed.
    fn header_tokens(&self, start: usize, end: usize) -> Result<Vec<usize>, ParseError> {
        let mut out = Vec::new();
        let mut t = start;
        while t < end {
            if self.tokens[t].kind.is_trivia() {
                t += 1;
                continue;
            }
            if self.is_punct(t, b'@') && !self.next_sig(t).is_some_and(|n| self.is_word(n, "interface")) {
                t = self.skip_annotation(t)?.min(end);
                continue;
            }
            out.push(t);
            t += 1;
        }
        Ok(out)
    }

    /// Finds the token that ends a declaration header: `{` or `;` at depth
    /// zero. `=` switches to initializer mode, where only `;` ends.
    fn header_end(&self, start: usize, brace_is_body: bool) -> Result<usize, ParseError> {
        let mut depth = 0usize;
        let mut initializer = false;
        let mut seen_paren = false;
        for t in start..self.tokens.len() {
            match self.tokens[t].kind {
                TokenKind::Punct(b'{') if depth == 0 && !initializer && (brace_is_body || !seen_paren) => return Ok(t),
                TokenKind::Punct(b';') if depth == 0 => return Ok(t),
                TokenKind::Punct(b'=') if depth == 0 => initializer = true,
                TokenKind::Punct(b'(' | b'[' | b'{') => {
                    if self.tokens[t].kind == TokenKind::Punct(b'(') {
                        seen_paren = true;
                    }
                    depth += 1;
                }
                TokenKind::Punct(b')' | b']' | b'}') => {
                    if depth == 0 {
                        return err(ParseErrorKind::UnbalancedBrace, self.tokens[t].span.start);
                    }
                    depth -= 1;
                }
                _ => {}
            }
        }
        err(ParseErrorKind::UnexpectedEof, self.src.len())
    }

    /// Position in `sig` of the first `=` outside any bracket.
    fn top_level_assignment(&self, sig: &[usize]) -> Option<usize> {
        let mut depth = 0usize;
        for (k, &t) in sig.iter().enumerate() {
            match self.tokens[t].kind {
                TokenKind::Punct(b'(' | b'[' | b'{') => depth += 1,
                TokenKind::Punct(b')' | b']' | b'}') => depth = depth.saturating_sub(1),
                TokenKind::Punct(b'=') if depth == 0 => return Some(k),
                _ => {}
            }
        }
        None
    }

    fn type_keyword(&self, sig: &[usize]) -> Option<usize> {
        let mut depth = 0usize;
        for (k, &t) in sig.iter().enumerate() {
            match self.tokens[t].kind {
                TokenKind::Punct(b'(' | b'[' | b'<' | b'{') => depth += 1,
                TokenKind::Punct(b')' | b']' | b'>' | b'}') => depth = depth.saturating_sub(1),
                TokenKind::Ident if depth == 0 => {
                    let after_dot = k > 0 && self.is_punct(sig[k - 1], b'.');
                    let word = self.text(t);
                    let next_is_name = sig
                        .get(k + 1)
                        .is_some_and(|&n| self.tokens[n].kind == TokenKind::Ident);
                    if after_dot || !next_is_name {
                        continue;
                    }
                    match word {
                        b"class" | b"interface" | b"enum" => return Some(k),
                        b"record" => {
                            let follows = sig.get(k + 2).copied();
                            if follows.is_some_and(|f| self.is_punct(f, b'(') || self.is_punct(f, b'<')) {
                                return Some(k);
                            }
                        }
                        _ => {}
                    }
                }
                _ => {}
            }
        }
        None
    }

    fn declaration(
        &self,
        scope: &Scope,
        cur: usize,
        t: usize,
        initializers: &mut [usize; 2],
    ) -> Result<(DeclNode, usize, usize), ParseError> {
        let annotation_scope = matches!(scope, Scope::Type { annotation: true, .. });
        let term = self.header_end(t, !annotation_scope)?;
        let all = self.header_tokens(t, term)?;
        let assignment = self.top_level_assignment(&all);
        let sig = &all[..assignment.unwrap_or(all.len())];

        if let Some(k) = self.type_keyword(sig) {
            return self.type_declaration(cur, sig, k, term);
        }

        let term_is_brace = self.is_punct(term, b'{');
        let (kind, identifier) = match scope {
            Scope::CompilationUnit => {
                let first = sig.first().copied();
                if first.is_some_and(|f| self.is_word(f, "package")) && !term_is_brace {
                    (DeclKind::Package, self.normalized(sig))
                } else if first.is_some_and(|f| self.is_word(f, "import")) && !term_is_brace {
                    (DeclKind::Import, self.normalized(sig))
                } else {
                    return err(ParseErrorKind::UnexpectedToken, self.offset(t));
                }
            }
            Scope::Type { name, annotation, .. } => {
                let paren = self.first_top_level_paren(sig).filter(|_| assignment.is_none());
                match (paren, term_is_brace) {
                    (Some(p), _) => {
                        let signature = self.signature(sig, p)?;
                        let kind = if *annotation {
                            DeclKind::AnnotationMember
                        } else if signature.name == *name {
                            DeclKind::Constructor
                        } else {
                            DeclKind::Method
                        };
                        (kind, alloc::format!("{signature}"))
                    }
                    (None, true) => {
                        let words: Vec<&[u8]> = sig.iter().map(|&s| self.text(s)).collect();
                        if words.is_empty() || words == [b"static"] {
                            let slot = usize::from(!words.is_empty());
                            let ordinal = initializers[slot];
                            initializers[slot] += 1;
                            let label = if slot == 1 { "static" } else { "instance" };
                            (DeclKind::InitializerBlock, alloc::format!("{label}#{ordinal}"))
                        } else if words.last().is_some_and(|w| *w == name.as_bytes()) {
                            // compact canonical record constructor
                            (DeclKind::Constructor, alloc::format!("{name}#compact"))
                        } else {
                            return err(ParseErrorKind::UnexpectedToken, self.offset(t));
                        }
                    }
                    (None, false) => (DeclKind::Field, self.field_names(t, term)?),
                }
            }
        };

        let last = if term_is_brace { self.matching(term)? } else { term };
        let end = self.line_tail(self.tokens[last].span.end);
        let split = if term_is_brace { self.tokens[term].span.start } else { end };
        let node = DeclNode::new(kind, identifier, self.src[cur..split].to_vec(), self.src[split..end].to_vec());
        Ok((node, end, self.token_at(end).max(last + 1)))
    }

    fn type_declaration(&self, cur: usize, sig: &[usize], k: usize, term: usize) -> Result<(DeclNode, usize, usize), ParseError> {
        if !self.is_punct(term, b'{') {
            return err(ParseErrorKind::UnexpectedToken, self.offset(term));
        }
        let keyword = self.text(sig[k]);
        let annotation = keyword == b"interface" && k > 0 && self.is_punct(sig[k - 1], b'@');
        let name = String::from_utf8_lossy(self.text(sig[k + 1])).into_owned();
        let scope = Scope::Type {
            name: name.clone(),
            annotation,
            enumeration: keyword == b"enum",
        };
        let header_end = self.line_tail(self.tokens[term].span.end);
        let (children, footer_start, close) = self.members(&scope, header_end, self.token_at(header_end).max(term + 1))?;
        let end = self.line_tail(self.tokens[close].span.end);
        let mut node = DeclNode::new(
            DeclKind::TypeDecl,
            name,
            self.src[cur..header_end].to_vec(),
            self.src[footer_start..end].to_vec(),
        );
        node.children = children;
        Ok((node, end, self.token_at(end).max(close + 1)))
    }

    fn first_top_level_paren(&self, sig: &[usize]) -> Option<usize> {
        let mut angle = 0usize;
        for (k, &t) in sig.iter().enumerate() {
            match self.tokens[t].kind {
                TokenKind::Punct(b'<') => angle += 1,
                TokenKind::Punct(b'>') => angle = angle.saturating_sub(1),
                TokenKind::Punct(b'(') if angle == 0 => return Some(k),
                _ => {}
            }
        }
        None
    }

    /// Token texts joined without trivia; adjacent words get one space.
    fn normalized(&self, sig: &[usize]) -> String {
        let mut out = Vec::new();
        let mut prev_word = false;
        for &t in sig {
            let word = matches!(self.tokens[t].kind, TokenKind::Ident | TokenKind::Number);
            if word && prev_word {
                out.push(b' ');
            }
            out.extend_from_slice(self.text(t));
            prev_word = word;
        }
        String::from_utf8_lossy(&out).into_owned()
    }

    fn signature(&self, sig: &[usize], paren: usize) -> Result<Signature, ParseError> {
        let name_tok = paren
            .checked_sub(1)
            .map(|k| sig[k])
            .filter(|&n| self.tokens[n].kind == TokenKind::Ident);
        let Some(name_tok) = name_tok else {
            return err(ParseErrorKind::UnexpectedToken, self.offset(sig[paren]));
        };
        let open = sig[paren];
        let close = self.matching(open)?;
        let params = self.header_tokens(open + 1, close)?;

        let mut parameter_types = Vec::new();
        let mut current: Vec<usize> = Vec::new();
        let mut depth = 0usize;
        for &p in &params {
            match self.tokens[p].kind {
                TokenKind::Punct(b'<' | b'(' | b'[') => depth += 1,
                TokenKind::Punct(b'>' | b')' | b']') => depth = depth.saturating_sub(1),
                TokenKind::Punct(b',') if depth == 0 => {
                    parameter_types.push(self.parameter_type(&current));
                    current.clear();
                    continue;
                }
                _ => {}
            }
            current.push(p);
        }
        if !current.is_empty() {
            parameter_types.push(self.parameter_type(&current));
        }
        Ok(Signature {
            name: String::from_utf8_lossy(self.text(name_tok)).into_owned(),
            parameter_types,
        })
    }

    /// Erased type of one parameter: modifiers, name and generic arguments
    /// dropped, array dimensions after the name moved onto the type.
    fn parameter_type(&self, tokens: &[usize]) -> String {
        let mut toks: Vec<usize> = tokens.iter().copied().filter(|&t| !self.is_word(t, "final")).collect();
        let mut dims = 0;
        while toks.len() >= 2 && self.is_punct(toks[toks.len() - 1], b']') && self.is_punct(toks[toks.len() - 2], b'[') {
            toks.truncate(toks.len() - 2);
            dims += 1;
        }
        if toks.len() > 1 && self.tokens[toks[toks.len() - 1]].kind == TokenKind::Ident {
            toks.pop();
        }
        let mut out = Vec::new();
        let mut angle = 0usize;
        for &t in &toks {
            match self.tokens[t].kind {
                TokenKind::Punct(b'<') => angle += 1,
                TokenKind::Punct(b'>') => angle = angle.saturating_sub(1),
                _ if angle == 0 => out.extend_from_slice(self.text(t)),
                _ => {}
            }
        }
        for _ in 0..dims {
            out.extend_from_slice(b"[]");
        }
        String::from_utf8_lossy(&out).into_owned()
    }

    /// Declarator names of a field, joined with commas.
    fn field_names(&self, start: usize, term: usize) -> Result<String, ParseError> {
        let mut names: Vec<&[u8]> = Vec::new();
        let mut depth = 0usize;
        let mut angle = 0usize;
        let mut initializer = false;
        let mut prev_ident: Option<usize> = None;
        for t in start..=term {
            let kind = self.tokens[t].kind;
            if kind.is_trivia() {
                continue;
            }
            if self.is_punct(t, b'@') && !initializer && depth == 0 {
                continue;
            }
            match kind {
                TokenKind::Ident => prev_ident = Some(t),
                TokenKind::Punct(b'(' | b'{') => {
                    depth += 1;
                    prev_ident = None;
                }
                TokenKind::Punct(b')' | b'}') => {
                    depth = depth.saturating_sub(1);
                    prev_ident = None;
                }
                TokenKind::Punct(b'[' | b']') => {}
                TokenKind::Punct(b'<') if !initializer => angle += 1,
                TokenKind::Punct(b'>') if !initializer => angle = angle.saturating_sub(1),
                TokenKind::Punct(b'=') if depth == 0 && !initializer => {
                    names.extend(prev_ident.map(|p| self.text(p)));
                    initializer = true;
                }
                TokenKind::Punct(b',' | b';') if depth == 0 && angle == 0 => {
                    if !initializer {
                        names.extend(prev_ident.map(|p| self.text(p)));
                    }
                    initializer = false;
                    prev_ident = None;
                }
                _ => prev_ident = None,
            }
        }
        if names.is_empty() {
            return err(ParseErrorKind::UnexpectedToken, self.offset(start));
        }
        Ok(String::from_utf8_lossy(&names.join(&b","[..])).into_owned())
    }
}

/// Appends source text to a plain node (used to attach an enum list's `;`).
fn extend_node(node: &mut DeclNode, more: &[u8]) {
    let target = if node.body.plain().is_some_and(|b| !b.is_empty()) {
        &mut node.body
    } else {
        &mut node.header
    };
    if let NodeText::Plain(t) = target {
        t.extend_from_slice(more);
    }
}
