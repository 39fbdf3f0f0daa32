from shellscatter.cli import main

raise SystemExit(main())
