use crate::exact::Scalar;

/// Operand slots an identity may reference.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Slot {
    /// Commutative product `·`.
    Product,
    /// Binary bracket `[ , ]`.
    Bracket,
    /// Unit of the product.
    Unit,
    /// Auxiliary linear map (`D` or `φ`).
    Map,
    /// n-ary bracket.
    NAry,
    /// A fixed element `h`.
    Fixed,
}

impl Slot {
    pub fn name(&self) -> &'static str {
        match self {
            Slot::Product => "product",
            Slot::Bracket => "bracket",
            Slot::Unit => "unit",
            Slot::Map => "map",
            Slot::NAry => "nary",
            Slot::Fixed => "fixed",
        }
    }
}

/// Expression over the slots and the identity's arguments.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Term {
    Var(usize),
    Unit,
    Fixed,
    Mul(Box<Term>, Box<Term>),
    Br(Box<Term>, Box<Term>),
    Map(Box<Term>),
    NAry(Vec<Term>),
    Lin(Vec<(Scalar, Term)>),
}

impl Term {
    pub fn slots(&self, out: &mut Vec<Slot>) {
        let mut push = |s: Slot| {
            if !out.contains(&s) {
                out.push(s);
            }
        };
        match self {
            Term::Var(_) => {}
            Term::Unit => push(Slot::Unit),
            Term::Fixed => push(Slot::Fixed),
            Term::Mul(a, b) => {
                push(Slot::Product);
                a.slots(out);
                b.slots(out);
            }
            Term::Br(a, b) => {
                push(Slot::Bracket);
                a.slots(out);
                b.slots(out);
            }
            Term::Map(a) => {
                push(Slot::Map);
                a.slots(out);
            }
            Term::NAry(args) => {
                push(Slot::NAry);
                for a in args {
                    a.slots(out);
                }
            }
            Term::Lin(parts) => {
                for (_, t) in parts {
                    t.slots(out);
                }
            }
        }
    }

    pub fn max_var(&self) -> Option<usize> {
        match self {
            Term::Var(i) => Some(*i),
            Term::Unit | Term::Fixed => None,
            Term::Mul(a, b) | Term::Br(a, b) => a.max_var().max(b.max_var()),
            Term::Map(a) => a.max_var(),
            Term::NAry(args) => args.iter().filter_map(Term::max_var).max(),
            Term::Lin(parts) => parts.iter().filter_map(|(_, t)| t.max_var()).max(),
        }
    }

    /// Infix rendering with the given variable names.
    pub fn render(&self, vars: &[&str]) -> String {
        match self {
            Term::Var(i) => vars[*i].to_string(),
            Term::Unit => "1".into(),
            Term::Fixed => "h".into(),
            Term::Mul(a, b) => format!("({}·{})", a.render(vars), b.render(vars)),
            Term::Br(a, b) => format!("[{},{}]", a.render(vars), b.render(vars)),
            Term::Map(a) => format!("D({})", a.render(vars)),
            Term::NAry(args) => {
                let parts: Vec<String> = args.iter().map(|a| a.render(vars)).collect();
                format!("[{}]", parts.join(","))
            }
            Term::Lin(parts) => {
                let mut s = String::new();
                for (k, (c, t)) in parts.iter().enumerate() {
                    let body = t.render(vars);
                    if c.is_one() {
                        s.push_str(if k == 0 { "" } else { " + " });
                        s.push_str(&body);
                    } else if *c == -Scalar::one() {
                        s.push_str(if k == 0 { "-" } else { " - " });
                        s.push_str(&body);
                    } else {
                        if k > 0 {
                            s.push_str(" + ");
                        }
                        s.push_str(&format!("({c}){body}"));
                    }
                }
                s
            }
        }
    }
}

pub fn var(i: usize) -> Term {
    Term::Var(i)
}

pub fn mul(a: Term, b: Term) -> Term {
    Term::Mul(Box::new(a), Box::new(b))
}

pub fn br(a: Term, b: Term) -> Term {
    Term::Br(Box::new(a), Box::new(b))
}

pub fn map(a: Term) -> Term {
    Term::Map(Box::new(a))
}

pub fn nary(args: Vec<Term>) -> Term {
    Term::NAry(args)
}

pub fn lin(parts: Vec<(i64, Term)>) -> Term {
    Term::Lin(parts.into_iter().map(|(c, t)| (Scalar::int(c), t)).collect())
}

pub fn lin_q(parts: Vec<(Scalar, Term)>) -> Term {
    Term::Lin(parts)
}
