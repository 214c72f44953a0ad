use super::{Expr, Node};

// Binding strength of the production an expression prints as.
const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const POWER: u8 = 3;
const ATOM: u8 = 4;

fn level(e: &Expr) -> u8 {
    match e.node() {
        Node::Add(..) | Node::Sub(..) => SUM,
        Node::Mul(..) | Node::Div(..) => PRODUCT,
        Node::Pow(..) => POWER,
        _ => ATOM,
    }
}

pub(super) fn render(e: &Expr, name: &dyn Fn(usize) -> String) -> String {
    let mut out = String::new();
    write(e, name, &mut out);
    out
}

fn write_wrapped(e: &Expr, wrap: bool, name: &dyn Fn(usize) -> String, out: &mut String) {
    if wrap {
        out.push('(');
        write(e, name, out);
        out.push(')');
    } else {
        write(e, name, out);
    }
}

fn write_call(func: &str, arg: &Expr, name: &dyn Fn(usize) -> String, out: &mut String) {
    out.push_str(func);
    write_wrapped(arg, true, name, out);
}

fn write(e: &Expr, name: &dyn Fn(usize) -> String, out: &mut String) {
    match e.node() {
        Node::Const(c) => {
            // The grammar has no signed literals; `neg(c)` parses back to Const(-c).
            if c.is_sign_negative() && *c != 0.0 {
                out.push_str(&format!("neg({})", -c));
            } else {
                out.push_str(&format!("{}", c.abs()));
            }
        }
        Node::Var(i) => out.push_str(&name(*i)),
        Node::Add(a, b) | Node::Sub(a, b) => {
            write_wrapped(a, level(a) < SUM, name, out);
            out.push(if matches!(e.node(), Node::Add(..)) {
                '+'
            } else {
                '-'
            });
            write_wrapped(b, level(b) <= SUM, name, out);
        }
        Node::Mul(a, b) | Node::Div(a, b) => {
            write_wrapped(a, level(a) < PRODUCT, name, out);
            out.push(if matches!(e.node(), Node::Mul(..)) {
                '*'
            } else {
                '/'
            });
            write_wrapped(b, level(b) <= PRODUCT, name, out);
        }
        Node::Pow(a, k) => {
            write_wrapped(a, level(a) < ATOM, name, out);
            out.push_str(&format!("^{k}"));
        }
        Node::Neg(a) => write_call("neg", a, name, out),
        Node::Sin(a) => write_call("sin", a, name, out),
        Node::Cos(a) => write_call("cos", a, name, out),
        Node::Exp(a) => write_call("exp", a, name, out),
        Node::Log(a) => write_call("log", a, name, out),
        Node::Sqrt(a) => write_call("sqrt", a, name, out),
    }
}
