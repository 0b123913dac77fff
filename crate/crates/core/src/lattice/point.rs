use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// A vertex of the square lattice, in lattice units.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn l1(self, other: Point) -> i64 {
        (self.x - other.x).abs() + (self.y - other.y).abs()
    }

    pub fn is_neighbor(self, other: Point) -> bool {
        self.l1(other) == 1
    }

    pub fn neighbors(self) -> [Point; 4] {
        Dir::ALL.map(|d| self + d.delta())
    }

    pub fn dist2(self, other: Point) -> i64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }
}

impl From<[i64; 2]> for Point {
    fn from([x, y]: [i64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [i64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

impl FromStr for Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (x, y) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected `x,y`, got `{s}`")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("bad coordinate `{t}`: {e}")))
        };
        Ok(Point::new(parse(x)?, parse(y)?))
    }
}

/// Unit step of the square lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    U,
    D,
    L,
    R,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::U, Dir::D, Dir::L, Dir::R];

    pub const fn delta(self) -> Point {
        match self {
            Dir::U => Point::new(0, 1),
            Dir::D => Point::new(0, -1),
            Dir::L => Point::new(-1, 0),
            Dir::R => Point::new(1, 0),
        }
    }

    pub fn between(from: Point, to: Point) -> Option<Dir> {
        match (to.x - from.x, to.y - from.y) {
            (0, 1) => Some(Dir::U),
            (0, -1) => Some(Dir::D),
            (-1, 0) => Some(Dir::L),
            (1, 0) => Some(Dir::R),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Dir::U => 'U',
            Dir::D => 'D',
            Dir::L => 'L',
            Dir::R => 'R',
        }
    }

    pub fn from_char(c: char) -> Option<Dir> {
        match c {
            'U' => Some(Dir::U),
            'D' => Some(Dir::D),
            'L' => Some(Dir::L),
            'R' => Some(Dir::R),
            _ => None,
        }
    }

    pub fn parse_many(s: &str) -> Result<Vec<Dir>, Error> {
        s.chars()
            .map(|c| Dir::from_char(c).ok_or_else(|| Error::Parse(format!("bad direction `{c}`"))))
            .collect()
    }

    pub fn opposite(self) -> Dir {
        match self {
            Dir::U => Dir::D,
            Dir::D => Dir::U,
            Dir::L => Dir::R,
            Dir::R => Dir::L,
        }
    }

    /// The two directions orthogonal to `self`.
    pub fn perpendicular(self) -> [Dir; 2] {
        match self {
            Dir::U | Dir::D => [Dir::L, Dir::R],
            Dir::L | Dir::R => [Dir::U, Dir::D],
        }
    }
}
