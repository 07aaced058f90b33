//! Published coefficient blocks of the `p = 2` pressure symbol.

use crate::error::{Error, Result};
use crate::rational::RatMatrix;

use super::MatrixSymbol;

const F00: [[&str; 9]; 9] = [
    ["127/360", "41/480", "-43/320", "41/480", "-1/360", "-2/45", "-43/320", "-2/45", "13/288"],
    ["41/480", "103/90", "41/480", "-1/360", "5/24", "-1/360", "-2/45", "-113/240", "-2/45"],
    ["-43/320", "41/480", "127/360", "-2/45", "-1/360", "41/480", "13/288", "-2/45", "-43/320"],
    ["41/480", "-1/360", "-2/45", "103/90", "5/24", "-113/240", "41/480", "-1/360", "-2/45"],
    ["-1/360", "5/24", "-1/360", "5/24", "158/45", "5/24", "-1/360", "5/24", "-1/360"],
    ["-2/45", "-1/360", "41/480", "-113/240", "5/24", "103/90", "-2/45", "-1/360", "41/480"],
    ["-43/320", "-2/45", "13/288", "41/480", "-1/360", "-2/45", "127/360", "41/480", "-43/320"],
    ["-2/45", "-113/240", "-2/45", "-1/360", "5/24", "-1/360", "41/480", "103/90", "41/480"],
    ["13/288", "-2/45", "-43/320", "-2/45", "-1/360", "41/480", "-43/320", "41/480", "127/360"],
];

const FM10: [[&str; 9]; 9] = [
    ["5/288", "5/576", "-5/1152", "23/720", "23/1440", "-23/2880", "-11/1440", "-11/2880", "11/5760"],
    ["5/576", "5/72", "5/576", "23/1440", "23/180", "23/1440", "-11/2880", "-11/360", "-11/2880"],
    ["-5/1152", "5/576", "5/288", "-23/2880", "23/1440", "23/720", "11/5760", "-11/2880", "-11/1440"],
    ["-17/144", "-17/288", "17/576", "-47/360", "-47/720", "47/1440", "23/720", "23/1440", "-23/2880"],
    ["-17/288", "-17/36", "-17/288", "-47/720", "-47/90", "-47/720", "23/1440", "23/180", "23/1440"],
    ["17/576", "-17/288", "-17/144", "47/1440", "-47/720", "-47/360", "-23/2880", "23/1440", "23/720"],
    ["-7/288", "-7/576", "7/1152", "-17/144", "-17/288", "17/576", "5/288", "5/576", "-5/1152"],
    ["-7/576", "-7/72", "-7/576", "-17/288", "-17/36", "-17/288", "5/576", "5/72", "5/576"],
    ["7/1152", "-7/576", "-7/288", "17/576", "-17/288", "-17/144", "-5/1152", "5/576", "5/288"],
];

const FM01: [[&str; 9]; 9] = [
    ["5/288", "23/720", "-11/1440", "5/576", "23/1440", "-11/2880", "-5/1152", "-23/2880", "11/5760"],
    ["-17/144", "-47/360", "23/720", "-17/288", "-47/720", "23/1440", "17/576", "47/1440", "-23/2880"],
    ["-7/288", "-17/144", "5/288", "-7/576", "-17/288", "5/576", "7/1152", "17/576", "-5/1152"],
    ["5/576", "23/1440", "-11/2880", "5/72", "23/180", "-11/360", "5/576", "23/1440", "-11/2880"],
    ["-17/288", "-47/720", "23/1440", "-17/36", "-47/90", "23/180", "-17/288", "-47/720", "23/1440"],
    ["-7/576", "-17/288", "5/576", "-7/72", "-17/36", "5/72", "-7/576", "-17/288", "5/576"],
    ["-5/1152", "-23/2880", "11/5760", "5/576", "23/1440", "-11/2880", "5/288", "23/720", "-11/1440"],
    ["17/576", "47/1440", "-23/2880", "-17/288", "-47/720", "23/1440", "-17/144", "-47/360", "23/720"],
    ["7/1152", "17/576", "-5/1152", "-7/576", "-17/288", "5/576", "-7/288", "-17/144", "5/288"],
];

fn parse(table: &[[&str; 9]; 9]) -> RatMatrix {
    let rows: Vec<&[&str]> = table.iter().map(|r| r.as_slice()).collect();
    RatMatrix::parse_rows(&rows).expect("builtin table parses")
}

/// The five-coefficient symbol of the `p = 2` staggered DG pressure operator.
pub fn builtin_dg_symbol(p: usize) -> Result<MatrixSymbol> {
    if p != 2 {
        return Err(Error::NoBuiltinCoefficients(p));
    }
    let f00 = parse(&F00);
    let fm10 = parse(&FM10);
    let fm01 = parse(&FM01);
    MatrixSymbol::from_exact(
        9,
        vec![
            ([0, 0], f00),
            ([1, 0], fm10.transpose()),
            ([-1, 0], fm10),
            ([0, 1], fm01.transpose()),
            ([0, -1], fm01),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn other_degrees_have_no_tables() {
        assert!(matches!(builtin_dg_symbol(1), Err(Error::NoBuiltinCoefficients(1))));
        assert!(matches!(builtin_dg_symbol(3), Err(Error::NoBuiltinCoefficients(3))));
    }

    #[test]
    fn corner_entries() {
        let sym = builtin_dg_symbol(2).unwrap();
        assert_eq!(*sym.exact_block([0, 0]).unwrap().get(0, 0), rat(127, 360));
        assert_eq!(*sym.exact_block([-1, 0]).unwrap().get(0, 0), rat(5, 288));
        assert_eq!(*sym.exact_block([0, -1]).unwrap().get(0, 0), rat(5, 288));
        let support: Vec<_> = sym.support().collect();
        assert_eq!(support, vec![[-1, 0], [0, -1], [0, 0], [0, 1], [1, 0]]);
    }
}
