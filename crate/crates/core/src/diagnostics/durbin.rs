//! Critical offsets `c0` for the CUSUM-of-squares significance lines.
//!
//! `c0(n, a)` is the upper-`a` point of `max_j (j/(n+1) - U_(j))` over `n`
//! uniform order statistics, the one-sided statistic tabulated by Durbin
//! (1969, Biometrika 56). Values below were produced by `tools/durbin_c0.py`
//! (400k draws per row, seed 20200524); row 1 equals the exact `0.5 - a`.

/// One-sided levels of the three columns.
pub const LEVELS: [f64; 3] = [0.05, 0.025, 0.005];

#[rustfmt::skip]
pub const C0: [[f64; 3]; 100] = [
    [0.4502, 0.4750, 0.4948], // 1
    [0.4431, 0.5084, 0.5967], // 2
    [0.4186, 0.4670, 0.5798], // 3
    [0.3908, 0.4463, 0.5421], // 4
    [0.3736, 0.4217, 0.5167], // 5
    [0.3561, 0.4017, 0.4898], // 6
    [0.3389, 0.3832, 0.4670], // 7
    [0.3253, 0.3671, 0.4489], // 8
    [0.3134, 0.3532, 0.4305], // 9
    [0.3026, 0.3402, 0.4145], // 10
    [0.2924, 0.3286, 0.4025], // 11
    [0.2839, 0.3192, 0.3884], // 12
    [0.2745, 0.3088, 0.3766], // 13
    [0.2674, 0.3013, 0.3658], // 14
    [0.2609, 0.2933, 0.3576], // 15
    [0.2553, 0.2862, 0.3479], // 16
    [0.2485, 0.2793, 0.3394], // 17
    [0.2425, 0.2729, 0.3317], // 18
    [0.2378, 0.2662, 0.3246], // 19
    [0.2324, 0.2605, 0.3168], // 20
    [0.2282, 0.2557, 0.3121], // 21
    [0.2241, 0.2513, 0.3045], // 22
    [0.2201, 0.2468, 0.3008], // 23
    [0.2160, 0.2421, 0.2941], // 24
    [0.2122, 0.2384, 0.2905], // 25
    [0.2089, 0.2345, 0.2852], // 26
    [0.2058, 0.2308, 0.2803], // 27
    [0.2025, 0.2273, 0.2766], // 28
    [0.1996, 0.2239, 0.2714], // 29
    [0.1969, 0.2205, 0.2673], // 30
    [0.1946, 0.2176, 0.2647], // 31
    [0.1921, 0.2153, 0.2607], // 32
    [0.1893, 0.2120, 0.2566], // 33
    [0.1866, 0.2088, 0.2532], // 34
    [0.1842, 0.2058, 0.2502], // 35
    [0.1823, 0.2041, 0.2478], // 36
    [0.1802, 0.2019, 0.2441], // 37
    [0.1777, 0.1989, 0.2406], // 38
    [0.1758, 0.1963, 0.2385], // 39
    [0.1738, 0.1944, 0.2348], // 40
    [0.1719, 0.1925, 0.2337], // 41
    [0.1708, 0.1909, 0.2305], // 42
    [0.1689, 0.1886, 0.2285], // 43
    [0.1670, 0.1866, 0.2264], // 44
    [0.1650, 0.1846, 0.2248], // 45
    [0.1639, 0.1833, 0.2219], // 46
    [0.1618, 0.1804, 0.2187], // 47
    [0.1605, 0.1793, 0.2170], // 48
    [0.1593, 0.1783, 0.2160], // 49
    [0.1577, 0.1763, 0.2130], // 50
    [0.1562, 0.1744, 0.2115], // 51
    [0.1547, 0.1730, 0.2092], // 52
    [0.1536, 0.1713, 0.2074], // 53
    [0.1529, 0.1709, 0.2064], // 54
    [0.1510, 0.1689, 0.2052], // 55
    [0.1499, 0.1672, 0.2023], // 56
    [0.1486, 0.1662, 0.2001], // 57
    [0.1476, 0.1650, 0.1985], // 58
    [0.1464, 0.1636, 0.1980], // 59
    [0.1453, 0.1622, 0.1965], // 60
    [0.1442, 0.1614, 0.1955], // 61
    [0.1432, 0.1597, 0.1930], // 62
    [0.1420, 0.1586, 0.1917], // 63
    [0.1411, 0.1575, 0.1901], // 64
    [0.1399, 0.1564, 0.1893], // 65
    [0.1391, 0.1554, 0.1885], // 66
    [0.1380, 0.1540, 0.1861], // 67
    [0.1372, 0.1533, 0.1849], // 68
    [0.1364, 0.1523, 0.1845], // 69
    [0.1355, 0.1514, 0.1828], // 70
    [0.1345, 0.1501, 0.1813], // 71
    [0.1339, 0.1494, 0.1811], // 72
    [0.1330, 0.1483, 0.1794], // 73
    [0.1321, 0.1472, 0.1779], // 74
    [0.1311, 0.1464, 0.1773], // 75
    [0.1307, 0.1456, 0.1754], // 76
    [0.1297, 0.1450, 0.1755], // 77
    [0.1290, 0.1440, 0.1738], // 78
    [0.1281, 0.1429, 0.1728], // 79
    [0.1274, 0.1422, 0.1717], // 80
    [0.1265, 0.1409, 0.1700], // 81
    [0.1260, 0.1408, 0.1702], // 82
    [0.1253, 0.1400, 0.1695], // 83
    [0.1245, 0.1390, 0.1674], // 84
    [0.1241, 0.1386, 0.1677], // 85
    [0.1230, 0.1372, 0.1662], // 86
    [0.1226, 0.1369, 0.1651], // 87
    [0.1219, 0.1359, 0.1643], // 88
    [0.1213, 0.1353, 0.1632], // 89
    [0.1210, 0.1348, 0.1624], // 90
    [0.1204, 0.1342, 0.1625], // 91
    [0.1193, 0.1333, 0.1609], // 92
    [0.1187, 0.1325, 0.1599], // 93
    [0.1184, 0.1324, 0.1602], // 94
    [0.1180, 0.1315, 0.1588], // 95
    [0.1172, 0.1307, 0.1578], // 96
    [0.1167, 0.1300, 0.1575], // 97
    [0.1160, 0.1296, 0.1565], // 98
    [0.1153, 0.1289, 0.1553], // 99
    [0.1150, 0.1280, 0.1544], // 100
];

/// `c0` at one-sided level `a` for real-valued `n` (interpolated linearly
/// between table rows; beyond the table the last row is scaled by
/// `sqrt(100 / n)`).
pub fn c0(n: f64, a: f64) -> Option<f64> {
    let col = LEVELS.iter().position(|l| (l - a).abs() < 1e-12)?;
    let n = n.max(1.0);
    if n >= 100.0 {
        return Some(C0[99][col] * (100.0 / n).sqrt());
    }
    let lo = n.floor() as usize;
    let frac = n - lo as f64;
    let a0 = C0[lo - 1][col];
    let a1 = C0[lo][col];
    Some(a0 + frac * (a1 - a0))
}
