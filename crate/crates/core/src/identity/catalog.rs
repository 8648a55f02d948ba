use crate::error::{Error, Result};
use crate::exact::Scalar;
use crate::identity::term::{br, lin, lin_q, map, mul, nary, var, Slot, Term};

/// A catalog identity: its defect must vanish for the identity to hold.
#[derive(Clone, Debug)]
pub struct IdentitySpec {
    pub id: String,
    pub arity: usize,
    pub vars: Vec<String>,
    pub defect: Term,
    pub description: &'static str,
}

impl IdentitySpec {
    pub fn slots(&self) -> Vec<Slot> {
        let mut s = Vec::new();
        self.defect.slots(&mut s);
        s.sort();
        s
    }

    pub fn render(&self) -> String {
        let names: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        self.defect.render(&names)
    }
}

/// Ids whose arity depends on the bound n-ary bracket.
pub const NARY_IDS: &[&str] = &[
    "tp-nlie",
    "poisson-nlie",
    "nlie-fundamental",
    "prod-kills-bracket",
    "bracket-kills-prod",
];

pub const BINARY_IDS: &[&str] = &[
    "tp-compat",
    "jacobi",
    "anticomm",
    "comm",
    "assoc",
    "poisson-leibniz",
    "gen-poisson",
    "jordan-bracket-unital",
    "jordan-bracket-1",
    "jordan-bracket-2",
    "jordan-bracket-3",
    "gd",
    "f-manifold",
    "quasi-poisson",
    "hom-lie",
    "farkas-relation",
    "quasi-auto",
];

/// Strips a parameter suffix such as `quasi-poisson(D)` or `tp-nlie(3)`.
pub fn base_id(id: &str) -> &str {
    id.split('(').next().unwrap_or(id).trim()
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn spec(id: &str, vars: &[&str], defect: Term, description: &'static str) -> IdentitySpec {
    IdentitySpec {
        id: id.to_string(),
        arity: vars.len(),
        vars: names(vars),
        defect,
        description,
    }
}

/// Looks up an identity. `n` is the arity of the n-ary bracket and only
/// matters for the ids in [`NARY_IDS`].
pub fn lookup(id: &str, n: usize) -> Result<IdentitySpec> {
    let (x, y, z, t) = (var(0), var(1), var(2), var(3));
    let one = || Term::Unit;
    let half = Scalar::frac(1, 2);
    let s = match base_id(id) {
        "tp-compat" => spec(
            "tp-compat",
            &["x", "y", "z"],
            lin(vec![
                (2, mul(z.clone(), br(x.clone(), y.clone()))),
                (-1, br(mul(z.clone(), x.clone()), y.clone())),
                (-1, br(x, mul(z, y))),
            ]),
            "2z·[x,y] - [z·x,y] - [x,z·y]",
        ),
        "jacobi" => spec(
            "jacobi",
            &["x", "y", "z"],
            lin(vec![
                (1, br(x.clone(), br(y.clone(), z.clone()))),
                (1, br(y.clone(), br(z.clone(), x.clone()))),
                (1, br(z, br(x, y))),
            ]),
            "[x,[y,z]] + [y,[z,x]] + [z,[x,y]]",
        ),
        "anticomm" => spec(
            "anticomm",
            &["x", "y"],
            lin(vec![(1, br(x.clone(), y.clone())), (1, br(y, x))]),
            "[x,y] + [y,x]",
        ),
        "comm" => spec(
            "comm",
            &["x", "y"],
            lin(vec![(1, mul(x.clone(), y.clone())), (-1, mul(y, x))]),
            "x·y - y·x",
        ),
        "assoc" => spec(
            "assoc",
            &["x", "y", "z"],
            lin(vec![
                (1, mul(mul(x.clone(), y.clone()), z.clone())),
                (-1, mul(x, mul(y, z))),
            ]),
            "(x·y)·z - x·(y·z)",
        ),
        "poisson-leibniz" => spec(
            "poisson-leibniz",
            &["x", "y", "z"],
            lin(vec![
                (1, br(mul(x.clone(), y.clone()), z.clone())),
                (-1, mul(x.clone(), br(y.clone(), z.clone()))),
                (-1, mul(br(x, z), y)),
            ]),
            "[x·y,z] - x·[y,z] - [x,z]·y",
        ),
        "gen-poisson" => spec(
            "gen-poisson",
            &["x", "y", "z"],
            lin(vec![
                (1, br(x.clone(), mul(y.clone(), z.clone()))),
                (-1, mul(br(x.clone(), y.clone()), z.clone())),
                (-1, mul(y.clone(), br(x.clone(), z.clone()))),
                (1, mul(mul(br(x, one()), y), z)),
            ]),
            "{x,y·z} - {x,y}·z - y·{x,z} + {x,1}·y·z",
        ),
        "jordan-bracket-unital" => spec(
            "jordan-bracket-unital",
            &["x", "y", "z"],
            lin(vec![
                (1, br(x.clone(), br(y.clone(), z.clone()))),
                (-1, br(br(x.clone(), y.clone()), z.clone())),
                (-1, br(y.clone(), br(x.clone(), z.clone()))),
                (-1, mul(br(x.clone(), one()), br(y.clone(), z.clone()))),
                (-1, mul(br(y.clone(), one()), br(z.clone(), x.clone()))),
                (-1, mul(br(z, one()), br(x, y))),
            ]),
            "{x,{y,z}} - {{x,y},z} - {y,{x,z}} - {x,1}·{y,z} - {y,1}·{z,x} - {z,1}·{x,y}",
        ),
        "jordan-bracket-1" => spec(
            "jordan-bracket-1",
            &["x", "y", "z", "t"],
            lin(vec![
                (1, br(mul(br(x.clone(), y.clone()), z.clone()), t.clone())),
                (1, br(mul(br(y.clone(), t.clone()), z.clone()), x.clone())),
                (1, br(mul(br(t.clone(), x.clone()), z.clone()), y.clone())),
                (-1, mul(br(x.clone(), y.clone()), br(z.clone(), t.clone()))),
                (-1, mul(br(y.clone(), t.clone()), br(z.clone(), x.clone()))),
                (-1, mul(br(t, x), br(z, y))),
            ]),
            "{{x,y}·z,t} + {{y,t}·z,x} + {{t,x}·z,y} - {x,y}·{z,t} - {y,t}·{z,x} - {t,x}·{z,y}",
        ),
        "jordan-bracket-2" => spec(
            "jordan-bracket-2",
            &["x", "y", "z", "t"],
            lin(vec![
                (1, mul(br(mul(y.clone(), t.clone()), z.clone()), x.clone())),
                (1, mul(mul(br(x.clone(), z.clone()), y.clone()), t.clone())),
                (-1, mul(br(mul(t.clone(), x.clone()), z.clone()), y.clone())),
                (-1, mul(mul(br(y, z), t), x)),
            ]),
            "{y·t,z}·x + {x,z}·y·t - {t·x,z}·y - {y,z}·t·x",
        ),
        "jordan-bracket-3" => spec(
            "jordan-bracket-3",
            &["x", "y", "z", "t"],
            lin(vec![
                (1, br(mul(t.clone(), x.clone()), mul(y.clone(), z.clone()))),
                (1, br(mul(t.clone(), y.clone()), mul(x.clone(), z.clone()))),
                (1, br(mul(mul(x.clone(), y.clone()), z.clone()), t.clone())),
                (-1, mul(br(mul(t.clone(), y.clone()), z.clone()), x.clone())),
                (-1, mul(br(mul(t.clone(), x.clone()), z.clone()), y.clone())),
                (-1, mul(mul(x, y), br(z, t))),
            ]),
            "{t·x,y·z} + {t·y,x·z} + {x·y·z,t} - {t·y,z}·x - {t·x,z}·y - x·y·{z,t}",
        ),
        "gd" => spec(
            "gd",
            &["x", "y", "z"],
            lin(vec![
                (1, br(x.clone(), mul(y.clone(), z.clone()))),
                (-1, br(z.clone(), mul(y.clone(), x.clone()))),
                (1, mul(br(y.clone(), x.clone()), z.clone())),
                (-1, mul(br(y.clone(), z.clone()), x.clone())),
                (-1, mul(y, br(x, z))),
            ]),
            "[x,y·z] - [z,y·x] + [y,x]·z - [y,z]·x - y·[x,z]",
        ),
        "f-manifold" => {
            let xy = || mul(x.clone(), y.clone());
            let zt = || mul(z.clone(), t.clone());
            spec(
                "f-manifold",
                &["x", "y", "z", "t"],
                lin(vec![
                    (1, br(xy(), zt())),
                    (-1, mul(br(xy(), z.clone()), t.clone())),
                    (-1, mul(br(xy(), t.clone()), z.clone())),
                    (-1, mul(x.clone(), br(y.clone(), zt()))),
                    (-1, mul(y.clone(), br(x.clone(), zt()))),
                    (1, mul(mul(x.clone(), z.clone()), br(y.clone(), t.clone()))),
                    (1, mul(mul(y.clone(), z.clone()), br(x.clone(), t.clone()))),
                    (1, mul(mul(y.clone(), t.clone()), br(x.clone(), z.clone()))),
                    (1, mul(mul(x, t), br(y, z))),
                ]),
                "[x·y,z·t] - [x·y,z]·t - [x·y,t]·z - x·[y,z·t] - y·[x,z·t] + x·z·[y,t] + y·z·[x,t] + y·t·[x,z] + x·t·[y,z]",
            )
        }
        "quasi-poisson" => {
            let (a, b, c) = (x, y, z);
            let p = |v: &Term| lin(vec![(1, map(v.clone())), (1, v.clone())]);
            spec(
                "quasi-poisson",
                &["a", "b", "c"],
                lin(vec![
                    (1, mul(a.clone(), p(&br(b.clone(), c.clone())))),
                    (-1, br(mul(a.clone(), p(&b)), c.clone())),
                    (-1, br(b.clone(), mul(a.clone(), p(&c)))),
                    (-1, mul(br(a.clone(), b.clone()), p(&c))),
                    (1, mul(p(&b), br(a, c))),
                ]),
                "a·(D{b,c} + {b,c}) - {a·(Db+b),c} - {b,a·(Dc+c)} - {a,b}·(Dc+c) + (Db+b)·{a,c}",
            )
        }
        "hom-lie" => spec(
            "hom-lie",
            &["x", "y", "z"],
            lin(vec![
                (1, br(map(x.clone()), br(y.clone(), z.clone()))),
                (1, br(map(y.clone()), br(z.clone(), x.clone()))),
                (1, br(map(z), br(x, y))),
            ]),
            "[φx,[y,z]] + [φy,[z,x]] + [φz,[x,y]]",
        ),
        "farkas-relation" => spec(
            "farkas-relation",
            &["x", "y", "z"],
            lin_q(vec![
                (Scalar::one(), mul(mul(map(x.clone()), y.clone()), z.clone())),
                (-&half, br(mul(x.clone(), y.clone()), z.clone())),
                (-&half, br(mul(x, z), y)),
            ]),
            "D(x)·y·z - 1/2([x·y,z] + [x·z,y])",
        ),
        "quasi-auto" => spec(
            "quasi-auto",
            &["x", "y"],
            lin(vec![
                (1, mul(Term::Fixed, mul(Term::Fixed, br(x.clone(), y.clone())))),
                (-1, br(mul(Term::Fixed, x), mul(Term::Fixed, y))),
            ]),
            "h·(h·[x,y]) - [h·x,h·y] for a fixed h",
        ),
        "tp-nlie" => {
            check_n(id, n)?;
            let xs: Vec<Term> = (0..n).map(var).collect();
            let z = var(n);
            let mut parts = vec![(n as i64, mul(z.clone(), nary(xs.clone())))];
            for i in 0..n {
                let mut args = xs.clone();
                args[i] = mul(z.clone(), xs[i].clone());
                parts.push((-1, nary(args)));
            }
            let mut vars: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
            vars.push("z".into());
            IdentitySpec {
                id: "tp-nlie".into(),
                arity: n + 1,
                vars,
                defect: lin(parts),
                description: "n·z·[x1,..,xn] - Σ_i [x1,..,z·xi,..,xn]",
            }
        }
        "poisson-nlie" => {
            check_n(id, n)?;
            let zs: Vec<Term> = (2..=n).map(var).collect();
            let with = |head: Term| {
                let mut a = vec![head];
                a.extend(zs.iter().cloned());
                nary(a)
            };
            let mut vars = vec!["x".to_string(), "y".to_string()];
            vars.extend((2..=n).map(|i| format!("z{i}")));
            IdentitySpec {
                id: "poisson-nlie".into(),
                arity: n + 1,
                vars,
                defect: lin(vec![
                    (1, with(mul(x.clone(), y.clone()))),
                    (-1, mul(x.clone(), with(y.clone()))),
                    (-1, mul(with(x), y)),
                ]),
                description: "[x·y,z2,..,zn] - x·[y,z2,..,zn] - [x,z2,..,zn]·y",
            }
        }
        "nlie-fundamental" => {
            check_n(id, n)?;
            let xs: Vec<Term> = (0..n - 1).map(var).collect();
            let ys: Vec<Term> = (n - 1..2 * n - 1).map(var).collect();
            let outer = |inner: Term| {
                let mut a = xs.clone();
                a.push(inner);
                nary(a)
            };
            let mut parts = vec![(1, outer(nary(ys.clone())))];
            for i in 0..n {
                let mut args = ys.clone();
                args[i] = outer(ys[i].clone());
                parts.push((-1, nary(args)));
            }
            let mut vars: Vec<String> = (1..n).map(|i| format!("x{i}")).collect();
            vars.extend((1..=n).map(|i| format!("y{i}")));
            IdentitySpec {
                id: "nlie-fundamental".into(),
                arity: 2 * n - 1,
                vars,
                defect: lin(parts),
                description: "[x1,..,x(n-1),[y1,..,yn]] - Σ_i [y1,..,[x1,..,x(n-1),yi],..,yn]",
            }
        }
        "prod-kills-bracket" => {
            check_n(id, n)?;
            let mut vars = vec!["x".to_string()];
            vars.extend((1..=n).map(|i| format!("y{i}")));
            IdentitySpec {
                id: "prod-kills-bracket".into(),
                arity: n + 1,
                vars,
                defect: mul(x, nary((1..=n).map(var).collect())),
                description: "x·[y1,..,yn]",
            }
        }
        "bracket-kills-prod" => {
            check_n(id, n)?;
            let mut args: Vec<Term> = (1..=n).map(var).collect();
            args[0] = mul(x, var(1));
            let mut vars = vec!["x".to_string()];
            vars.extend((1..=n).map(|i| format!("y{i}")));
            IdentitySpec {
                id: "bracket-kills-prod".into(),
                arity: n + 1,
                vars,
                defect: nary(args),
                description: "[x·y1,y2,..,yn]",
            }
        }
        _ => return Err(Error::UnknownIdentity(id.to_string())),
    };
    Ok(s)
}

fn check_n(id: &str, n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("{id} needs an n-ary bracket with n >= 2, got {n}")));
    }
    Ok(())
}

/// Markdown table of the catalog: id, arity, slots, defect.
pub fn catalog_table() -> String {
    let mut out = String::from("| id | arity | slots | defect |\n|---|---|---|---|\n");
    for id in BINARY_IDS.iter().chain(NARY_IDS) {
        let spec = lookup(id, 3).expect("catalog id");
        let arity = if NARY_IDS.contains(id) {
            match *id {
                "nlie-fundamental" => "2n-1".to_string(),
                _ => "n+1".to_string(),
            }
        } else {
            spec.arity.to_string()
        };
        let slots: Vec<&str> = spec.slots().iter().map(Slot::name).collect();
        out.push_str(&format!(
            "| {} | {} | {} | `{}` |\n",
            spec.id,
            arity,
            slots.join(", "),
            spec.description
        ));
    }
    out.push_str(
        "\nThe `hom-lie` cyclic sum uses `[z,x]` in its middle term. Scalars are taken in \
         Q or Q(i), so checking a multilinear defect on basis tuples decides the identity.\n",
    );
    out
}
