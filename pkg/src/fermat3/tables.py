"""Published reference values used by the acceptance checks."""

from __future__ import annotations

import re
from fractions import Fraction

from .exact import Poly

_TERM = re.compile(r"([+-]?)(\d*)(x(?:\^\{?(\d+)\}?)?)?")


def parse_poly(s: str, var: str = "x") -> Poly:
    """Parse strings like 'x^{12}-44x^{11}+...+729' into a Poly."""
    s = s.replace(" ", "").replace("{", "").replace("}", "")
    coeffs: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {s[pos:pos + 12]!r}")
        sign, num, xpart, exp = m.groups()
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        e = (int(exp) if exp else 1) if xpart else 0
        if not xpart and not num:
            raise ValueError("empty term")
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
    return Poly([coeffs.get(e, 0) for e in range(max(coeffs) + 1)], var)


R1_FACTORS = ["x-3", "x^2+4x+6", "x^2+2x+12"]

# R_2 = -(R_1 factors) * three quartics (for d = 35, 32, 20)
R2_SIGN = -1
R2_QUARTICS = ["x^4-12x^3+28x^2+48x+576", "x^4-8x^3+26x^2+60x+450", "x^4+2x^3+26x^2+60x+180"]

P_D = {
    8: "x^2+4x+6",
    11: "x^2+2x+12",
    20: "x^4+2x^3+26x^2+60x+180",
    32: "x^4-8x^3+26x^2+60x+450",
    35: "x^4-12x^3+28x^2+48x+576",
    23: "x^6+11x^5+65x^4+191x^3+441x^2+405x+675",
    44: "x^6+20x^5+126x^4+172x^3+180x^2-1188x+1188",
    59: "x^6+22x^5+208x^4-40x^3+144x^2-3456x+6912",
    83: "x^6+6x^5+560x^4-1384x^3+576x^2-12960x+43200",
    107: "x^6-74x^5+1680x^4-6184x^3+2736x^2-43200x+172800",
    92: "x^6-13x^5+841x^4-2567x^3+1071x^2-20493x+75141",
    104: "x^12-44x^11+724x^10+11008x^9+30440x^8-125456x^7-806960x^6-1971936x^5"
         "+4056480x^4+17611776x^3+46267200x^2+10730880x+24681024",
    419: "x^{18}+1938x^{17}+1598844x^{16}-7296032x^{15}+210116832x^{14}-83424320x^{13}"
         "+5572113408x^{12}-19699084288x^{11}+75000228864x^{10}-291034399744x^9"
         "+1601000957952x^8-3440158470144x^7+8483079352320x^6-59155454435328x^5"
         "+24881284988928x^4-229506313420800x^3+706394569310208x^2+382092054626304x"
         "+2886917746065408",
}

# the factors of R_3 in printed order
R3_FACTORS = ["x-3", "x^2+4x+6", "x^2+2x+12"] + [P_D[d] for d in (23, 44, 59, 83, 107, 92, 104)]

Q_D = {
    104: "x^{12}+4x^{11}+10x^{10}+16x^9+74x^8+136x^7+106x^6+408x^5+666x^4+432x^3+810x^2+972x+729",
    116: "x^{12}-2x^{11}+4x^{10}+34x^9-4x^8+14x^7+290x^6+42x^5-36x^4+918x^3+324x^2-486x+729",
    152: "x^{12}+6x^{11}+9x^{10}+38x^9+114x^8+22x^7+601x^6+66x^5+1026x^4+1026x^3+729x^2+1458x+729",
    212: "x^{12}+12x^{11}+76x^{10}+254x^9+604x^8+1108x^7+1826x^6+3324x^5+5436x^4+6858x^3+6156x^2"
         "+2916x+729",
    515: "x^{12}+24x^{11}+179x^{10}+8x^9+1566x^8-1064x^7+7207x^6-3192x^5+14094x^4+216x^3+14499x^2"
         "+5832x+729",
    707: "x^{12}-10x^{11}+462x^{10}+1196x^9+4146x^8+6974x^7+4582x^6+20922x^5+37314x^4+32292x^3"
         "+37422x^2-2430x+729",
    491: "x^{18}-5x^{17}+161x^{16}+418x^{15}+1059x^{14}+3667x^{13}+10561x^{12}+17474x^{11}+36518x^{10}"
         "+85772x^9+109554x^8+157266x^7+285147x^6+297027x^5+257337x^4+304722x^3+352107x^2-32805x"
         "+19683",
    563: "x^{18}-19x^{17}+188x^{16}+765x^{15}-1092x^{14}+1861x^{13}+17529x^{12}-10466x^{11}-4240x^{10}"
         "+140654x^9-12720x^8-94194x^7+473283x^6+150741x^5-265356x^4+557685x^3+411156x^2-124659x"
         "+19683",
    1187: "x^{18}+51x^{17}+3388x^{16}+23875x^{15}+103588x^{14}+279691x^{13}+647729x^{12}+1690194x^{11}"
          "+3278680x^{10}+5162354x^9+9836040x^8+15211746x^7+17488683x^6+22654971x^5+25171884x^4"
          "+17404875x^3+7409556x^2+334611x+19683",
    2003: "x^{18}-94x^{17}+32310x^{16}+350556x^{15}+2724866x^{14}+13517266x^{13}+43159873x^{12}"
          "+106774252x^{11}+239739364x^{10}+464084648x^9+719218092x^8+960968268x^7+1165316571x^6"
          "+1094898546x^5+662142438x^4+255555324x^3+70661970x^2-616734x+19683",
    419: "x^{18}+18x^{17}+66x^{16}-92x^{15}+1254x^{14}-1358x^{13}+4785x^{12}+4508x^{11}-5844x^{10}"
         "+45656x^9-17532x^8+40572x^7+129195x^6-109998x^5+304722x^4-67068x^3+144342x^2+118098x"
         "+19683",
}

# printed mod 3 factorizations of q_d: x^(h/2 or h) times these factors
Q_D_MOD3 = {
    104: (6, ["x^3+2x+1", "x^3+x^2+2x+1"]),
    116: (6, ["x^6+x^5+x^4+x^3+2x^2+2x+2"]),
    152: (6, ["x^6+2x^3+x+1"]),
    212: (6, ["x^6+x^4+2x^3+x^2+x+2"]),
    515: (6, ["x^6+2x^4+2x^3+x+1"]),
    707: (6, ["x^6+2x^5+2x^3+2x+1"]),
    491: (9, ["x^9+x^8+2x^7+x^6+x^4+x^3+2x^2+2x+2"]),
    563: (9, ["x^9+2x^8+2x^7+x^4+x^2+2x+2"]),
    1187: (9, ["x^9+x^7+x^6+x^5+x^4+2x^3+x+2"]),
    2003: (9, ["x^9+2x^8+2x^5+x^4+x^3+x^2+x+2"]),
    419: (9, ["x^9+x^6+x^4+2x^2+2"]),
}

# m_d coefficients (a, b) meaning a + b*sqrt(-D), descending from x^(h-1), with D as given
M_419 = {
    "D": 419,
    "coeffs": [(969, 39), (11292, -888), (-79156, -2876), (-197304, -1560), (-1282144, 49408),
               (2913120, 164448), (4039168, -4480), (26063616, -609024), (-17042432, -2489344)],
}

M_2132 = {
    "D": 533,
    "coeffs": [
        (9393228, 147942),
        (17581542922, -1139676838),
        (4233420285756, -214472221260),
        (28090931203668, 4607212526412),
        (-448665169157496, -40619438690976),
        (3238916409263024, 167548974849520),
        (-15707644756406928, -209057497048512),
        (42438813525646032, 101094723966192),
        (-111186869940745056, -2651748110716320),
        (403627934868140832, 2285891562046368),
        (-819117113722300800, 26904445557929280),
        (557549011339707200, -46324546936236800),
    ],
}

DEMO_2132 = {
    "p": 569,
    "sqrt": -6,
    "shifts": [565, 397, 74, 332, 344, 520, 73, 336, 67, 94, 490, 286],
    "fermat_example": ((502, 180), (18, 501)),
    "sum": (13, 462),
}

# Q_K = (x, y), each coordinate as (a, b) for a + b*sqrt(-d)
Q_K = {
    23: ((Fraction(1), Fraction(0)), (Fraction(9, 2), Fraction(1, 2))),
    59: ((Fraction(-2), Fraction(0)), (Fraction(9, 2), Fraction(1, 2))),
    83: ((Fraction(-8), Fraction(0)), (Fraction(9, 2), Fraction(5, 2))),
    107: ((Fraction(-26, 9), Fraction(0)), (Fraction(9, 2), Fraction(29, 54))),
}

# coefficient of x^(h+1) in p_d for the mod 9 criterion
COEFF_H_PLUS_1 = {107: 1680, 419: 75000228864}

CLASS_NUMBER_6 = [104, 116, 152, 212, 515, 707]
CLASS_NUMBER_9 = [419, 491, 563, 1187, 2003]
CLASS_NUMBER_12 = [440, 680, 728, 1067, 1235, 1547, 1892, 1955, 2132, 2387, 2555, 2627, 2795, 2867,
                   356, 731, 755, 932, 1208, 1355, 1763, 2468, 2723, 4907]

D_N = {1: [8, 11], 2: [20, 32, 35], 3: [23, 44, 59, 83, 92, 104, 107]}

RELATION_SUMS = {1: 2, 2: 6, 3: 24, 4: 72, 5: 240, 6: 696}

W_SERIES = [1, 9, 135, 2430, 48114, 1010394, 22084326]

NON_NORMAL_CUBICS = ["x^3+x^2+2", "x^3+2x^2+1"]

OCTICS_5219 = ["x^8+2x^7+x^3+1", "x^8+x^5+2x^4+2x^2+1", "x^8+x^7+2x^6+x^5+x^4+2x^3+x^2+1"]
ELL_RANK_5219 = 7
RANK_AT_LEAST_3 = [23, 59, 83, 104]

COEFF_5219 = -109527766467663058811934965944881823020241102307328
COEFF_5219_FACTORS = {2: 26, 3: 2, 107071: 1, 29757069131: 1, 56916714418935524735887103: 1}
