"""Desk-scale inputs used by the tests, the demos and the CLI job files.

Every entry is job text in the input language, so the same instance can be
fed to the parser, the library and the command line.
"""

from .dsl import parse

P2 = "ring R = QQ[x,y,z] order grevlex;\n"
P3 = "ring R = QQ[x,y,z,w] order grevlex;\n"

JOBS = {
    # ideal sheaves of points (torsion-free, hd 1 and 2)
    "p2_point": P2 + "module I twists (-1,-1) relations { y, -x; };\n",
    "p3_point": P3 + "module I twists (-1,-1,-1) relations { y, -x, 0; z, 0, -x; 0, z, -y; };\n",
    # a free module and a twisted sum (hd 0)
    "p2_free": P2 + "module F twists (0,-1) relations { };\n",
    # ideal of a fat point (x^2, y) on P^2
    "p2_fat_point": P2 + "module I twists (-2,-1) relations { y, -x^2; };\n",
    # ideal of two points on P^2: (x, y z)
    "p2_two_points": P2 + "module I twists (-1,-2) relations { y*z, -x; };\n",
    # cyclic modules R/(f) (hd 1, principal Fitt_0)
    "cyc_x": P2 + "module Q twists (0) relations { x; };\n",
    "cyc_xy": P2 + "module Q twists (0) relations { x*y; };\n",
    "cyc_conic": P2 + "module Q twists (0) relations { x^2 + y^2 - z^2; };\n",
    "diag_xy": P2 + "module Q twists (0,0) relations { x, 0; 0, y; };\n",
    "det_2x2": P3 + "module Q twists (0,0) relations { x, z; y, w; };\n",
    # modules with hd >= 2 and non-invertible Fitt_0
    "pt_p2": P2 + "module Q twists (0) relations { x; y; };\n",
    "pt_p3": P3 + "module Q twists (0) relations { x; y; z; };\n",
    "fat_pt": P2 + "module Q twists (0) relations { x^2; y; };\n",
    "sq_pt": P2 + "module Q twists (0) relations { x^2; x*y; y^2; };\n",
    "line_and_pt": P2 + "module Q twists (0) relations { x*y; x*z; };\n",
    "line_p3": P3 + "module Q twists (0) relations { x; y; };\n",
}

# which entries play which role
TORSION_FREE = ("p2_point", "p3_point", "p2_free", "p2_fat_point", "p2_two_points")
LEMMA2_HD1 = ("cyc_x", "cyc_xy", "cyc_conic", "diag_xy", "det_2x2")
LEMMA2_HD2 = ("pt_p2", "pt_p3", "fat_pt", "sq_pt", "line_and_pt", "line_p3")


def job(name):
    return parse(JOBS[name])


def module(name):
    return job(name).module
