import sys
import logging

from cli import main

if __name__ == "__main__":
    logging.info("Starting nilcover")
    sys.exit(main())
