"""Coefficient tables for the explicit Runge-Kutta methods.

DOP853 coefficients follow Hairer, Norsett & Wanner (Solving ODEs I, 2nd ed.)
and the published DOP853 Fortran code. Only the 12 propagating stages are
kept; the extra dense-output stages are not needed here.

The 7th-order method is the propagating solution of Fehlberg's 7(8) pair
(NASA TR R-287, 1968). All of its coefficients are rational.
"""

from fractions import Fraction as F

# --- DOP853 ---------------------------------------------------------------

DP853_C = (
    0.0,
    0.526001519587677318785587544488e-01,
    0.789002279381515978178381316732e-01,
    0.118350341907227396726757197510,
    0.281649658092772603273242802490,
    0.333333333333333333333333333333,
    0.25,
    0.307692307692307692307692307692,
    0.651282051282051282051282051282,
    0.6,
    0.857142857142857142857142857142,
    1.0,
)

_A = {
    (1, 0): 5.26001519587677318785587544488e-2,
    (2, 0): 1.97250569845378994544595329183e-2,
    (2, 1): 5.91751709536136983633785987549e-2,
    (3, 0): 2.95875854768068491816892993775e-2,
    (3, 2): 8.87627564304205475450678981324e-2,
    (4, 0): 2.41365134159266685502369798665e-1,
    (4, 2): -8.84549479328286085344864962717e-1,
    (4, 3): 9.24834003261792003115737966543e-1,
    (5, 0): 3.7037037037037037037037037037e-2,
    (5, 3): 1.70828608729473871279604482173e-1,
    (5, 4): 1.25467687566822425016691814123e-1,
    (6, 0): 3.7109375e-2,
    (6, 3): 1.70252211019544039314978060272e-1,
    (6, 4): 6.02165389804559606850219397283e-2,
    (6, 5): -1.7578125e-2,
    (7, 0): 3.70920001185047927108779319836e-2,
    (7, 3): 1.70383925712239993810214054705e-1,
    (7, 4): 1.07262030446373284651809199168e-1,
    (7, 5): -1.53194377486244017527936158236e-2,
    (7, 6): 8.27378916381402288758473766002e-3,
    (8, 0): 6.24110958716075717114429577812e-1,
    (8, 3): -3.36089262944694129406857109825,
    (8, 4): -8.68219346841726006818189891453e-1,
    (8, 5): 2.75920996994467083049415600797e1,
    (8, 6): 2.01540675504778934086186788979e1,
    (8, 7): -4.34898841810699588477366255144e1,
    (9, 0): 4.77662536438264365890433908527e-1,
    (9, 3): -2.48811461997166764192642586468,
    (9, 4): -5.90290826836842996371446475743e-1,
    (9, 5): 2.12300514481811942347288949897e1,
    (9, 6): 1.52792336328824235832596922938e1,
    (9, 7): -3.32882109689848629194453265587e1,
    (9, 8): -2.03312017085086261358222928593e-2,
    (10, 0): -9.3714243008598732571704021658e-1,
    (10, 3): 5.18637242884406370830023853209,
    (10, 4): 1.09143734899672957818500254654,
    (10, 5): -8.14978701074692612513997267357,
    (10, 6): -1.85200656599969598641566180701e1,
    (10, 7): 2.27394870993505042818970056734e1,
    (10, 8): 2.49360555267965238987089396762,
    (10, 9): -3.0467644718982195003823669022,
    (11, 0): 2.27331014751653820792359768449,
    (11, 3): -1.05344954667372501984066689879e1,
    (11, 4): -2.00087205822486249909675718444,
    (11, 5): -1.79589318631187989172765950534e1,
    (11, 6): 2.79488845294199600508499808837e1,
    (11, 7): -2.85899827713502369474065508674,
    (11, 8): -8.87285693353062954433549289258,
    (11, 9): 1.23605671757943030647266201528e1,
    (11, 10): 6.43392746015763530355970484046e-1,
}

DP853_A = tuple(
    tuple(_A.get((q, r), 0.0) for r in range(12)) for q in range(12)
)

# 8th-order weights
DP853_B_V = (
    5.42937341165687622380535766363e-2,
    0.0,
    0.0,
    0.0,
    0.0,
    4.45031289275240888144113950566,
    1.89151789931450038304281599044,
    -5.8012039600105847814672114227,
    3.1116436695781989440891606237e-1,
    -1.52160949662516078556178806805e-1,
    2.01365400804030348374776537501e-1,
    4.47106157277725905176885569043e-2,
)

# 5th-order weights are b^V minus the published 8(5) error coefficients.
_ER5 = (
    0.1312004499419488073250102996e-1,
    0.0,
    0.0,
    0.0,
    0.0,
    -0.1225156446376204440720569753e+1,
    -0.4957589496572501915214079952,
    0.1664377182454986536961530415e+1,
    -0.3503288487499736816886487290,
    0.3341791187130174790297318841,
    0.8192320648511571246570742613e-1,
    -0.2235530786388629525884427845e-1,
)
DP853_B_H = tuple(b - e for b, e in zip(DP853_B_V, _ER5))

# 3rd-order weights: nonzero only at stages 1, 9 and 12.
DP853_B_L = (
    0.244094488188976377952755905512,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.733846688281611857341361741547,
    0.0,
    0.0,
    0.220588235294117647058823529412e-1,
)

# --- Fehlberg 7(8), 7th-order solution ------------------------------------

RKF7_C = tuple(
    F(n) for n in ("0", "2/27", "1/9", "1/6", "5/12", "1/2", "5/6", "1/6",
                   "2/3", "1/3", "1", "0", "1")
)

_RKF_ROWS = (
    (),
    ("2/27",),
    ("1/36", "1/12"),
    ("1/24", "0", "1/8"),
    ("5/12", "0", "-25/16", "25/16"),
    ("1/20", "0", "0", "1/4", "1/5"),
    ("-25/108", "0", "0", "125/108", "-65/27", "125/54"),
    ("31/300", "0", "0", "0", "61/225", "-2/9", "13/900"),
    ("2", "0", "0", "-53/6", "704/45", "-107/9", "67/90", "3"),
    ("-91/108", "0", "0", "23/108", "-976/135", "311/54", "-19/60", "17/6",
     "-1/12"),
    ("2383/4100", "0", "0", "-341/164", "4496/1025", "-301/82", "2133/4100",
     "45/82", "45/164", "18/41"),
    ("3/205", "0", "0", "0", "0", "-6/41", "-3/205", "-3/41", "3/41",
     "6/41", "0"),
    ("-1777/4100", "0", "0", "-341/164", "4496/1025", "-289/82", "2193/4100",
     "51/82", "33/164", "12/41", "0", "1"),
)

RKF7_A = tuple(
    tuple(F(v) for v in row) + (F(0),) * (13 - len(row)) for row in _RKF_ROWS
)

RKF7_B = tuple(
    F(n) for n in ("41/840", "0", "0", "0", "0", "34/105", "9/35", "9/35",
                   "9/280", "9/280", "41/840", "0", "0")
)

# --- classical RK4 ----------------------------------------------------------

RK4_C = (F(0), F(1, 2), F(1, 2), F(1))
RK4_A = (
    (F(0), F(0), F(0), F(0)),
    (F(1, 2), F(0), F(0), F(0)),
    (F(0), F(1, 2), F(0), F(0)),
    (F(0), F(0), F(1), F(0)),
)
RK4_B = (F(1, 6), F(1, 3), F(1, 3), F(1, 6))
