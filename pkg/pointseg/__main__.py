import sys
from pointseg.pipeline.cli import main

sys.exit(main())
