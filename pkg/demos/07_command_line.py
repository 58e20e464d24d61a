"""The command line front end on the job files in corpus/.

Run: python3 demos/07_command_line.py
(equivalently: stdres resolve corpus/p2_point.txt, and so on)
"""

import pathlib

from stdres.cli import main as stdres

CORPUS = pathlib.Path(__file__).resolve().parent.parent / "corpus"


def main():
    runs = [
        ["resolve", str(CORPUS / "p2_point.txt")],
        ["certify", "lemma2", str(CORPUS / "pt_p2.txt")],
        ["--format", "json", "fitting", str(CORPUS / "p2_two_points.txt"), "--index", "1"],
        ["resolve", str(CORPUS / "pt_p2.txt")],
    ]
    for argv in runs:
        print("$ stdres", " ".join(a.replace(str(CORPUS.parent) + "/", "") for a in argv))
        code = stdres(argv)
        print(f"(exit status {code})\n")


if __name__ == "__main__":
    main()
