void stop(int *flag) {
  *flag = 0;
  return;
}
