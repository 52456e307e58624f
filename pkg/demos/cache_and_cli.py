"""
Caching and the command line
============================

"""

import io
import tempfile

from gcx.cli import run

# the same job twice against one cache directory: the second run reads
# the stored matrices and prints the same bytes
job = ["cohomology", "--family", "dgc", "--k", "2", "--loops", "3", "--vertices", "3..5", "--format", "json"]
with tempfile.TemporaryDirectory() as cache:
    outs = []
    for _ in range(2):
        buf = io.StringIO()
        run(job + ["--cache-dir", cache], buf)
        outs.append(buf.getvalue())
print(outs[0] == outs[1])

buf = io.StringIO()
run(["rescaling-class", "--flavor", "pseudo", "--max-weight", "4"], buf)
print(buf.getvalue())
