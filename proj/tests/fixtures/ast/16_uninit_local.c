int pick(int flag) {
  int mode;
  if (flag) mode = 1;
  return mode;
}
