# Core: settings and exception hierarchy
