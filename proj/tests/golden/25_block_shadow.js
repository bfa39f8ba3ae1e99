let value = 1;
{
  let value = 2;
  {
    let value = 3;
    log(value);
  }
  log(value);
}
log(value);
{
  let value = 9;
  log(value);
}
