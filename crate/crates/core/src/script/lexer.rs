use super::ast::Pos;
use super::Diagnostic;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Let,
    Assert,
    Emit,
    Ident(String),
    /// Unsigned decimal digits with an optional fractional part.
    Number(String),
    Minus,
    Slash,
    LParen,
    RParen,
    Comma,
    Semi,
    Assign,
    EqEq,
    Lt,
    Gt,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Let => "`let`".into(),
            Tok::Assert => "`assert`".into(),
            Tok::Emit => "`emit`".into(),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Number(s) => format!("number `{s}`"),
            Tok::Minus => "`-`".into(),
            Tok::Slash => "`/`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Assign => "`=`".into(),
            Tok::EqEq => "`==`".into(),
            Tok::Lt => "`<`".into(),
            Tok::Gt => "`>`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

/// Splits `src` into tokens. Unrecognized characters become diagnostics and
/// are skipped, so lexing never stops early.
pub fn lex(src: &str) -> (Vec<Token>, Vec<Diagnostic>) {
    let chars: Vec<char> = src.chars().collect();
    let mut tokens = Vec::new();
    let mut diags = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1u32, 1u32);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos::new(line, col);
        let start = i;
        let tok = match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
                continue;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                match word.as_str() {
                    "let" => Tok::Let,
                    "assert" => Tok::Assert,
                    "emit" => Tok::Emit,
                    _ => Tok::Ident(word),
                }
            }
            c if c.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i + 1 < chars.len() && chars[i] == '.' && chars[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                Tok::Number(chars[start..i].iter().collect())
            }
            '=' if chars.get(i + 1) == Some(&'=') => {
                i += 2;
                Tok::EqEq
            }
            _ => {
                i += 1;
                match c {
                    '-' => Tok::Minus,
                    '/' => Tok::Slash,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    ';' => Tok::Semi,
                    '=' => Tok::Assign,
                    '<' => Tok::Lt,
                    '>' => Tok::Gt,
                    other => {
                        diags.push(Diagnostic::error(
                            pos,
                            format!("unexpected character `{other}`"),
                        ));
                        col += 1;
                        continue;
                    }
                }
            }
        };
        col += (i - start) as u32;
        tokens.push(Token { tok, pos });
    }
    tokens.push(Token {
        tok: Tok::Eof,
        pos: Pos::new(line, col),
    });
    (tokens, diags)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_comments() {
        let (toks, diags) = lex("let a = 0.25; # note\n  emit a;");
        assert!(diags.is_empty());
        let kinds: Vec<_> = toks.iter().map(|t| t.tok.clone()).collect();
        assert_eq!(
            kinds,
            [
                Tok::Let,
                Tok::Ident("a".into()),
                Tok::Assign,
                Tok::Number("0.25".into()),
                Tok::Semi,
                Tok::Emit,
                Tok::Ident("a".into()),
                Tok::Semi,
                Tok::Eof
            ]
        );
        assert_eq!(toks[3].pos, Pos::new(1, 9));
        assert_eq!(toks[5].pos, Pos::new(2, 3));
    }

    #[test]
    fn stray_characters_are_reported() {
        let (toks, diags) = lex("let a = 1 $ 2 @;");
        assert_eq!(diags.len(), 2);
        assert_eq!(diags[0].column, 11);
        assert_eq!(toks.len(), 7);
    }
}
