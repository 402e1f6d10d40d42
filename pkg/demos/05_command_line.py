"""
The same workflow from the command line
=======================================

Every step writes plain files: a JSON code manifest, one directory per
stripe with block_NNN.bin files, and a JSON access report.
"""
import subprocess
import sys
import tempfile
from pathlib import Path


def run(*args):
    cmd = [sys.executable, "-m", "convcodes", *args]
    print("$ convcodes", " ".join(args))
    out = subprocess.run(cmd, capture_output=True, text=True)
    print(out.stdout + out.stderr, end="")
    return out.returncode


work = Path(tempfile.mkdtemp(prefix="convcodes-demo-"))
code = str(work / "code.json")

run("bounds", "--lambda", "2", "--ki", "10", "--ri", "4", "--rf", "4")
run("construct", "--scheme", "hankel1", "--lambda", "2", "--ki", "5", "--ri", "4", "--rf", "2", "--out", code)
run("verify", "--code", code)
run("encode", "--code", code, "--random", "32", "--seed", "7", "--out", str(work / "enc"))
run("convert", "--code", code, "--stripes", str(work / "enc"), "--out", str(work / "merged"))
run("decode", "--code", code, "--stripe", str(work / "merged"), "--erase", "2,11", "--out", str(work / "back.bin"))

same = (work / "back.bin").read_bytes() == (work / "enc" / "message.bin").read_bytes()
print("round trip matches the encoded message:", same)
