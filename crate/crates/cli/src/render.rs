use pathbisim::fps::{Fps, Hat};
use pathbisim::lts::{Lts, SigSymbol};
use pathbisim::Partition;

/// Member names of every block, in block order.
pub fn block_names<'a>(part: &Partition, name: impl Fn(usize) -> &'a str) -> Vec<Vec<String>> {
    part.blocks()
        .iter()
        .map(|b| b.iter().map(|&s| name(s).to_string()).collect())
        .collect()
}

/// `{A,B},{C}`.
pub fn blocks_line(blocks: &[Vec<String>]) -> String {
    blocks
        .iter()
        .map(|b| format!("{{{}}}", b.join(",")))
        .collect::<Vec<_>>()
        .join(",")
}

/// A signature word in tuple style, blocks shown by their members:
/// `({A,B},b,{D})`.
pub fn signature_word(lts: &Lts, part: &Partition, word: &[SigSymbol]) -> String {
    let block = |b: usize| {
        let names: Vec<&str> = part.block(b).iter().map(|&s| lts.state_name(s)).collect();
        format!("{{{}}}", names.join(","))
    };
    let parts: Vec<String> = word
        .iter()
        .map(|sym| match *sym {
            SigSymbol::Start(b) => block(b),
            SigSymbol::Step(a, b) => format!("{},{}", lts.action_name(a), block(b)),
        })
        .collect();
    format!("({})", parts.join(","))
}

/// `τ*b`, or `τ*` for `ε`.
pub fn language(fps: &Fps, hat: Hat) -> String {
    match hat {
        Hat::Epsilon => "τ*".to_string(),
        Hat::Visible(_) => format!("τ*{}", fps.hat_name(hat)),
    }
}

pub fn member_set(fps: &Fps, members: &[usize]) -> String {
    let names: Vec<&str> = members.iter().map(|&s| fps.state_name(s)).collect();
    format!("{{{}}}", names.join(","))
}
