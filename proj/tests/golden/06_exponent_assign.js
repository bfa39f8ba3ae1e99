var x = 3;
x **= 2;
log(x);
var box = { v: 2 };
box.v **= 3;
log(box.v);
var arr = [2, 3];
arr[1] **= 2;
log(arr[1]);
