use super::{valid_identifier, Letter, Presentation, PresentationError, Word};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn err(&self, message: impl Into<String>) -> PresentationError {
        PresentationError::Syntax { pos: self.pos, message: message.into() }
    }

    fn expect(&mut self, want: char) -> Result<(), PresentationError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.err(format!("expected `{want}`, found `{c}`"))),
            None => Err(self.err(format!("expected `{want}`, found end of input"))),
        }
    }

    fn ident(&mut self) -> Result<&'a str, PresentationError> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_alphabetic() => {}
            Some(c) => return Err(self.err(format!("expected identifier, found `{c}`"))),
            None => return Err(self.err("expected identifier, found end of input")),
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric()) {
            self.bump();
        }
        Ok(&self.src[start..self.pos])
    }

    fn integer(&mut self) -> Result<i64, PresentationError> {
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.bump();
        }
        let digits = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == digits {
            return Err(PresentationError::Syntax {
                pos: start,
                message: "expected integer exponent".into(),
            });
        }
        self.src[start..self.pos].parse().map_err(|_| PresentationError::Syntax {
            pos: start,
            message: "exponent out of range".into(),
        })
    }
}

/// Parses `< gens | relators >`.
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let mut cur = Cursor::new(text);
    cur.expect('<')?;
    let mut gens = vec![cur.ident()?.to_string()];
    loop {
        cur.skip_ws();
        match cur.peek() {
            Some(',') => {
                cur.bump();
                gens.push(cur.ident()?.to_string());
            }
            Some('|') => {
                cur.bump();
                break;
            }
            Some(c) => return Err(cur.err(format!("expected `,` or `|`, found `{c}`"))),
            None => return Err(cur.err("unterminated presentation")),
        }
    }
    for (i, g) in gens.iter().enumerate() {
        if gens[..i].contains(g) {
            return Err(PresentationError::DuplicateGenerator(g.clone()));
        }
    }
    let compact = gens.iter().all(|g| g.len() == 1);

    let mut relators = Vec::new();
    cur.skip_ws();
    if cur.peek() == Some('>') {
        cur.bump();
    } else {
        loop {
            relators.push(parse_relator(&mut cur, &gens, compact)?);
            cur.skip_ws();
            match cur.bump() {
                Some(',') => continue,
                Some('>') => break,
                Some(c) => {
                    cur.pos -= c.len_utf8();
                    return Err(cur.err(format!("expected `,` or `>`, found `{c}`")));
                }
                None => return Err(cur.err("unterminated presentation")),
            }
        }
    }
    cur.skip_ws();
    if cur.peek().is_some() {
        return Err(cur.err("trailing input after `>`"));
    }
    Presentation::new(gens, relators)
}

/// Parses a single word over the generators of `p`, e.g. `a b a^-1` or `1`.
pub fn parse_word(p: &Presentation, text: &str) -> Result<Word, PresentationError> {
    let mut cur = Cursor::new(text);
    let w = parse_relator(&mut cur, p.generators(), p.compact_names())?;
    cur.skip_ws();
    if cur.peek().is_some() {
        return Err(cur.err("trailing input after word"));
    }
    Ok(w)
}

fn parse_relator(
    cur: &mut Cursor<'_>,
    gens: &[String],
    compact: bool,
) -> Result<Word, PresentationError> {
    let mut letters = Vec::new();
    let mut terms = 0;
    loop {
        cur.skip_ws();
        let start = cur.pos;
        match cur.peek() {
            Some('1') => {
                cur.bump();
                exponent(cur)?;
                terms += 1;
                continue;
            }
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => break,
        }
        let names: Vec<&str> = if compact {
            // each character is its own generator; only the last one takes the exponent
            let run = {
                let mut end = cur.pos;
                for c in cur.src[cur.pos..].chars() {
                    if c.is_ascii_alphanumeric() {
                        end += c.len_utf8();
                    } else {
                        break;
                    }
                }
                &cur.src[cur.pos..end]
            };
            cur.pos += run.len();
            run.char_indices().map(|(i, c)| &run[i..i + c.len_utf8()]).collect()
        } else {
            vec![cur.ident()?]
        };
        let n = exponent(cur)?;
        for (k, name) in names.iter().enumerate() {
            if !valid_identifier(name) {
                return Err(PresentationError::Syntax {
                    pos: start + k,
                    message: format!("`{name}` is not a generator name"),
                });
            }
            let gen = gens
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| PresentationError::UnknownGenerator(name.to_string()))?;
            let power = if k + 1 == names.len() { n } else { 1 };
            let l = Letter::new(gen, power < 0);
            letters.extend(std::iter::repeat_n(l, power.unsigned_abs() as usize));
        }
        terms += 1;
    }
    if terms == 0 {
        return Err(cur.err("expected a word"));
    }
    Ok(Word::new(letters))
}

fn exponent(cur: &mut Cursor<'_>) -> Result<i64, PresentationError> {
    if cur.peek() == Some('^') {
        cur.bump();
        let n = cur.integer()?;
        if n.unsigned_abs() > 1 << 20 {
            return Err(cur.err("exponent too large"));
        }
        Ok(n)
    } else {
        Ok(1)
    }
}
