from .pipeline import main
import sys

sys.exit(main())
