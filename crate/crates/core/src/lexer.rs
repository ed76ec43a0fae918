//! A small Java lexer.
//!
//! The lexer only distinguishes what the merge engines need: code versus
//! string/char literals and comments, identifiers, and single-byte
//! punctuation. It works on raw bytes and never fails; unterminated
//! constructs are reported on the token instead.

use core::ops::Range;

/// The five lexical states relevant for separator detection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LexicalContext {
    Code,
    StringLiteral,
    CharLiteral,
    LineComment,
    BlockComment,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TokenKind {
    Whitespace,
    LineComment,
    /// `terminated` is false when the input ends inside the comment.
    BlockComment { terminated: bool },
    /// Includes `"""` text blocks. Unterminated single-line strings end at
    /// the line break, which is not part of the token.
    StringLiteral { terminated: bool },
    CharLiteral { terminated: bool },
    Ident,
    Number,
    Punct(u8),
}

impl TokenKind {
    pub fn context(self) -> LexicalContext {
        match self {
            TokenKind::LineComment => LexicalContext::LineComment,
            TokenKind::BlockComment { .. } => LexicalContext::BlockComment,
            TokenKind::StringLiteral { .. } => LexicalContext::StringLiteral,
            TokenKind::CharLiteral { .. } => LexicalContext::CharLiteral,
            _ => LexicalContext::Code,
        }
    }

    pub fn is_trivia(self) -> bool {
        matches!(
            self,
            TokenKind::Whitespace | TokenKind::LineComment | TokenKind::BlockComment { .. }
        )
    }

    pub fn is_terminated(self) -> bool {
        match self {
            TokenKind::BlockComment { terminated }
            | TokenKind::StringLiteral { terminated }
            | TokenKind::CharLiteral { terminated } => terminated,
            _ => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub span: Range<usize>,
}

pub fn is_ident_byte(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b == b'_' || b == b'$' || b >= 0x80
}

pub struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a [u8]) -> Self {
        Lexer { src, pos: 0 }
    }

    fn peek(&self, off: usize) -> Option<u8> {
        self.src.get(self.pos + off).copied()
    }

    fn quoted(&mut self, quote: u8) -> bool {
        // Position is just past the opening quote.
        while let Some(b) = self.peek(0) {
            match b {
                b'\\' => {
                    self.pos += 1;
                    if !matches!(self.peek(0), None | Some(b'\n')) {
                        self.pos += 1;
                    }
                }
                b'\n' => return false,
                _ if b == quote => {
                    self.pos += 1;
                    return true;
                }
                _ => self.pos += 1,
            }
        }
        false
    }

    fn text_block(&mut self) -> bool {
        // Position is just past the opening `"""`.
        while let Some(b) = self.peek(0) {
            match b {
                b'\\' => self.pos = (self.pos + 2).min(self.src.len()),
                b'"' if self.peek(1) == Some(b'"') && self.peek(2) == Some(b'"') => {
                    self.pos += 3;
                    return true;
                }
                _ => self.pos += 1,
            }
        }
        false
    }
}

impl Iterator for Lexer<'_> {
    type Item = Token;

    fn next(&mut self) -> Option<Token> {
        let start = self.pos;
        let b = self.peek(0)?;
        let kind = match b {
            b' ' | b'\t' | b'\n' | b'\r' | 0x0c => {
                while matches!(self.peek(0), Some(b' ' | b'\t' | b'\n' | b'\r' | 0x0c)) {
                    self.pos += 1;
                }
                TokenKind::Whitespace
            }
            b'/' if self.peek(1) == Some(b'/') => {
                while !matches!(self.peek(0), None | Some(b'\n')) {
                    self.pos += 1;
                }
                TokenKind::LineComment
            }
            b'/' if self.peek(1) == Some(b'*') => {
                self.pos += 2;
                let mut terminated = false;
                while let Some(c) = self.peek(0) {
                    if c == b'*' && self.peek(1) == Some(b'/') {
                        self.pos += 2;
                        terminated = true;
                        break;
                    }
                    self.pos += 1;
                }
                TokenKind::BlockComment { terminated }
            }
            b'"' if self.peek(1) == Some(b'"') && self.peek(2) == Some(b'"') => {
                self.pos += 3;
                let terminated = self.text_block();
                TokenKind::StringLiteral { terminated }
            }
            b'"' => {
                self.pos += 1;
                let terminated = self.quoted(b'"');
                TokenKind::StringLiteral { terminated }
            }
            b'\'' => {
                self.pos += 1;
                let terminated = self.quoted(b'\'');
                TokenKind::CharLiteral { terminated }
            }
            b'0'..=b'9' => {
                while matches!(self.peek(0), Some(c) if is_ident_byte(c) || c == b'.') {
                    self.pos += 1;
                }
                TokenKind::Number
            }
            _ if is_ident_byte(b) => {
                while matches!(self.peek(0), Some(c) if is_ident_byte(c)) {
                    self.pos += 1;
                }
                TokenKind::Ident
            }
            _ => {
                self.pos += 1;
                TokenKind::Punct(b)
            }
        };
        Some(Token {
            kind,
            span: start..self.pos,
        })
    }
}

/// Calls `f` with the position of every byte that lies in code context.
pub fn for_each_code_byte(src: &[u8], mut f: impl FnMut(usize, u8)) {
    for tok in Lexer::new(src) {
        if tok.kind.context() == LexicalContext::Code {
            for i in tok.span {
                f(i, src[i]);
            }
        }
    }
}
