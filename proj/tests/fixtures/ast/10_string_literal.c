const char *name(void) { return "satriage"; }
