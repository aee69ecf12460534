//! Recognizer for the Graphviz DOT language grammar, including nested
//! HTML strings. Returns the node statements and edges it saw.

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Id(String),
    Kw(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Eq,
    Semi,
    Comma,
    Colon,
    EdgeOp(&'static str),
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct DotSummary {
    pub directed: bool,
    pub node_stmts: Vec<String>,
    pub edges: Vec<(String, String)>,
}

fn tokenize(src: &str) -> Result<Vec<Tok>, String> {
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '/' if chars.get(i + 1) == Some(&'/') => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '#' if i == 0 || chars[i - 1] == '\n' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '/' if chars.get(i + 1) == Some(&'*') => {
                i += 2;
                while i + 1 < chars.len() && !(chars[i] == '*' && chars[i + 1] == '/') {
                    i += 1;
                }
                if i + 1 >= chars.len() {
                    return Err("unterminated comment".into());
                }
                i += 2;
            }
            '{' => {
                out.push(Tok::LBrace);
                i += 1;
            }
            '}' => {
                out.push(Tok::RBrace);
                i += 1;
            }
            '[' => {
                out.push(Tok::LBracket);
                i += 1;
            }
            ']' => {
                out.push(Tok::RBracket);
                i += 1;
            }
            '=' => {
                out.push(Tok::Eq);
                i += 1;
            }
            ';' => {
                out.push(Tok::Semi);
                i += 1;
            }
            ',' => {
                out.push(Tok::Comma);
                i += 1;
            }
            ':' => {
                out.push(Tok::Colon);
                i += 1;
            }
            '-' if chars.get(i + 1) == Some(&'-') => {
                out.push(Tok::EdgeOp("--"));
                i += 2;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push(Tok::EdgeOp("->"));
                i += 2;
            }
            '"' => {
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return Err("unterminated string".into()),
                        Some('\\') if chars.get(i + 1) == Some(&'"') => {
                            s.push('"');
                            i += 2;
                        }
                        Some('"') => {
                            i += 1;
                            break;
                        }
                        Some(&ch) => {
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                out.push(Tok::Id(s));
            }
            '<' => {
                let mut depth = 0usize;
                let start = i;
                loop {
                    match chars.get(i) {
                        None => return Err("unterminated HTML string".into()),
                        Some('<') => depth += 1,
                        Some('>') => {
                            depth -= 1;
                            if depth == 0 {
                                i += 1;
                                break;
                            }
                        }
                        _ => {}
                    }
                    i += 1;
                }
                out.push(Tok::Id(chars[start..i].iter().collect()));
            }
            c if c == '-' || c == '.' || c.is_ascii_digit() => {
                let start = i;
                i += 1;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let digits = s.trim_start_matches('-');
                if digits.is_empty() || digits == "." || digits.matches('.').count() > 1 {
                    return Err(format!("bad numeral `{s}`"));
                }
                out.push(Tok::Id(s));
            }
            c if c.is_ascii_alphabetic() || c == '_' || !c.is_ascii() => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || !chars[i].is_ascii())
                {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let lower = s.to_ascii_lowercase();
                if ["strict", "graph", "digraph", "node", "edge", "subgraph"]
                    .contains(&lower.as_str())
                {
                    out.push(Tok::Kw(lower));
                } else {
                    out.push(Tok::Id(s));
                }
            }
            other => return Err(format!("unexpected character `{other}`")),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    summary: DotSummary,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<(), String> {
        match self.bump() {
            Some(got) if got == t => Ok(()),
            got => Err(format!(
                "expected {t:?}, got {got:?} at token {}",
                self.pos - 1
            )),
        }
    }

    fn id(&mut self) -> Result<String, String> {
        match self.bump() {
            Some(Tok::Id(s)) => Ok(s),
            got => Err(format!(
                "expected ID, got {got:?} at token {}",
                self.pos - 1
            )),
        }
    }

    fn graph(&mut self) -> Result<(), String> {
        if self.peek() == Some(&Tok::Kw("strict".into())) {
            self.bump();
        }
        match self.bump() {
            Some(Tok::Kw(k)) if k == "graph" => self.summary.directed = false,
            Some(Tok::Kw(k)) if k == "digraph" => self.summary.directed = true,
            got => return Err(format!("expected graph or digraph, got {got:?}")),
        }
        if matches!(self.peek(), Some(Tok::Id(_))) {
            self.bump();
        }
        self.expect(Tok::LBrace)?;
        self.stmt_list()?;
        self.expect(Tok::RBrace)?;
        if self.pos != self.toks.len() {
            return Err("trailing tokens after graph".into());
        }
        Ok(())
    }

    fn stmt_list(&mut self) -> Result<(), String> {
        while !matches!(self.peek(), Some(Tok::RBrace) | None) {
            self.stmt()?;
            if self.peek() == Some(&Tok::Semi) {
                self.bump();
            }
        }
        Ok(())
    }

    fn stmt(&mut self) -> Result<(), String> {
        match self.peek().cloned() {
            Some(Tok::Kw(k)) if k == "graph" || k == "node" || k == "edge" => {
                self.bump();
                self.attr_list()
            }
            Some(Tok::Kw(k)) if k == "subgraph" => self.subgraph_then_edges(),
            Some(Tok::LBrace) => self.subgraph_then_edges(),
            Some(Tok::Id(_)) => {
                let first = self.id()?;
                if self.peek() == Some(&Tok::Eq) {
                    self.bump();
                    self.id()?;
                    return Ok(());
                }
                self.port()?;
                if matches!(self.peek(), Some(Tok::EdgeOp(_))) {
                    self.edge_rhs(Some(first))?;
                } else {
                    self.summary.node_stmts.push(first);
                }
                if self.peek() == Some(&Tok::LBracket) {
                    self.attr_list()?;
                }
                Ok(())
            }
            got => Err(format!("unexpected {got:?} at token {}", self.pos)),
        }
    }

    fn subgraph_then_edges(&mut self) -> Result<(), String> {
        self.subgraph()?;
        if matches!(self.peek(), Some(Tok::EdgeOp(_))) {
            self.edge_rhs(None)?;
            if self.peek() == Some(&Tok::LBracket) {
                self.attr_list()?;
            }
        }
        Ok(())
    }

    fn subgraph(&mut self) -> Result<(), String> {
        if self.peek() == Some(&Tok::Kw("subgraph".into())) {
            self.bump();
            if matches!(self.peek(), Some(Tok::Id(_))) {
                self.bump();
            }
        }
        self.expect(Tok::LBrace)?;
        self.stmt_list()?;
        self.expect(Tok::RBrace)
    }

    fn port(&mut self) -> Result<(), String> {
        if self.peek() == Some(&Tok::Colon) {
            self.bump();
            self.id()?;
            if self.peek() == Some(&Tok::Colon) {
                self.bump();
                self.id()?;
            }
        }
        Ok(())
    }

    fn edge_rhs(&mut self, mut prev: Option<String>) -> Result<(), String> {
        while let Some(Tok::EdgeOp(op)) = self.peek().cloned() {
            let want = if self.summary.directed { "->" } else { "--" };
            if op != want {
                return Err(format!("edge operator {op} in a graph expecting {want}"));
            }
            self.bump();
            let next = match self.peek() {
                Some(Tok::Kw(k)) if k == "subgraph" => {
                    self.subgraph()?;
                    None
                }
                Some(Tok::LBrace) => {
                    self.subgraph()?;
                    None
                }
                _ => {
                    let id = self.id()?;
                    self.port()?;
                    Some(id)
                }
            };
            if let (Some(a), Some(b)) = (&prev, &next) {
                self.summary.edges.push((a.clone(), b.clone()));
            }
            prev = next;
        }
        Ok(())
    }

    fn attr_list(&mut self) -> Result<(), String> {
        self.expect(Tok::LBracket)?;
        loop {
            match self.peek() {
                Some(Tok::RBracket) => {
                    self.bump();
                    break;
                }
                Some(Tok::Id(_)) => {
                    self.id()?;
                    self.expect(Tok::Eq)?;
                    self.id()?;
                    if matches!(self.peek(), Some(Tok::Semi | Tok::Comma)) {
                        self.bump();
                    }
                }
                got => return Err(format!("bad attribute list at {got:?}")),
            }
        }
        if self.peek() == Some(&Tok::LBracket) {
            self.attr_list()?;
        }
        Ok(())
    }
}

pub fn check(src: &str) -> Result<DotSummary, String> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        summary: DotSummary::default(),
    };
    p.graph()?;
    Ok(p.summary)
}
